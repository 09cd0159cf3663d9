"""Words, balls, and random walks on the free group.

Everything downstream is built on exact word arithmetic: freely reduced
words, length-lex enumeration, and seeded random walks whose increments are
drawn by inverse-CDF under a counter-based generator (Philox), so every run
of this script prints the same numbers.
"""

from stationarylab import (
    FreeGroupContext,
    ball,
    conjugate,
    sample_path,
    uniform_generator_measure,
)

F2 = FreeGroupContext(2)

# --- reduced words -----------------------------------------------------------
# The string form: generators a, b; inverses A, B; the identity is "1".
u = F2.word("abA")
v = F2.word("aB")
print("u =", u, "| v =", v)
print("u v =", u * v, "   (the junction aA cancels)")
print("u^-1 =", u.inverse())
print("conjugate of a by b:", conjugate(F2.word("a"), F2.word("b")))

# --- balls grow like 2k(2k-1)^(n-1) ------------------------------------------
for radius in range(5):
    count = sum(1 for _ in ball(F2, radius))
    print(f"ball({radius}) holds {count} words (closed form {F2.ball_size(radius)})")

# --- the simple random walk ---------------------------------------------------
mu = uniform_generator_measure(2)
print("\nwalk law:", mu)
print("generating as a semigroup:", mu.is_generating())

path = sample_path(mu, 60, seed=2024)
print("first positions:", " ".join(str(w) for w in path.positions[:8]))
print("|position| every 10 steps:", [len(path.positions[t]) for t in range(0, 61, 10)])
# transience: the walk escapes at speed 1/2, so |position| ~ t/2

# rerunning with the same seed reproduces the trajectory bit for bit
again = sample_path(mu, 60, seed=2024)
assert again.positions == path.positions
print("same seed, same path:", again.positions[-1] == path.positions[-1])
