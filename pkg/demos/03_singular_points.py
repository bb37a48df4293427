"""Singular points of projective hypersurfaces and their Milnor numbers."""
from expsums import build_field, germ_at, is_isolated, parse, singular_points
from expsums.singular import NonIsolatedSingularities

F7 = build_field(7)

cusp = parse("x1^2*x3 + x2^3", 3, F7)
for pt in singular_points(cusp):
    g = germ_at(cusp, pt)
    print(pt.label(), "local", g.local_equation, "weights", g.weights, "delta", g.total_degree, "mu", g.milnor)

# points need not be rational: here a conjugate pair lives over F_49
F = parse("(x1^2 + x2^2)^2*x1", 2, F7)
for pt in singular_points(F):
    print(f"e = {pt.e}: {pt.label()}  mu = {germ_at(F, pt).milnor}")

# a double line is singular along a whole curve
line = parse("x1^2*x3", 3, F7)
print("x^2 z:", is_isolated(line).status)
try:
    singular_points(line)
except NonIsolatedSingularities as exc:
    print("refused:", exc)
