"""Exact exponential sums as cyclotomic integers."""
import math

from expsums import build_field, char_sum, extension_sums, parse, trace_histogram

F5 = build_field(5)
f = parse("x1^2", 1, F5)

# the histogram of Tr(f(x)) is the primitive; every character reads off it
h = trace_histogram(f, F5)
print("histogram:", h.counts)
S = char_sum(h)
print("S =", S, " |S| =", abs(S.numeric()), " sqrt(5) =", math.sqrt(5))

# over extensions the sums obey the Hasse-Davenport relation S_2 = -S_1^2
S1, S2 = extension_sums(f, F5, 2).sums
print("S_2 == -S_1^2:", S2 == -(S1 * S1))

# conjugate characters are Galois images of one another
for b in range(1, 5):
    print(f"b = {b}: S = {char_sum(h, b)}")

# a two-variable sum over F_{5^3}
g = parse("x1^2*x2 + x2^2", 2, F5)
for m, s in enumerate(extension_sums(g, F5, 3).sums, start=1):
    print(f"m = {m}: |S_m| = {abs(s.numeric()):.6f}  (bound 3 * 5^m = {3 * 5**m})")
