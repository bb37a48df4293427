"""Finite fields: construction, trace, Frobenius, embeddings."""
from expsums import build_field, embed, enumerate_field, frobenius, trace_to_prime

F9 = build_field(3, 2)
print(F9, "modulus (low degree first):", F9.modulus)  # t^2 + 1

t = F9.gen
print("t^2 =", t * t)
print("frobenius(t) =", frobenius(t))
print("Tr(t) =", trace_to_prime(t), " Tr(1) =", trace_to_prime(F9.one))

# the additive group sums to zero
print("sum of all elements:", sum(enumerate_field(F9), F9.zero))

# F_9 sits inside F_81; the embedding respects arithmetic
F81 = build_field(3, 4)
x, y = F9.from_index(5), F9.from_index(7)
print("embed(x*y) == embed(x)*embed(y):", embed(x * y, F81) == embed(x, F81) * embed(y, F81))

# fields get large quickly, but building them is cheap
big = build_field(7, 12, size_bound=2**62)
print(big, "modulus:", big.modulus)
