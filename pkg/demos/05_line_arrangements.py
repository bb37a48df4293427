"""Line arrangements: Milnor numbers versus the closed-form reference values."""
import random

from expsums.sweeps import line_arrangements, run_case, triangle_case

rng = random.Random(0)
cases = [triangle_case(7, rng)] + [c for c in line_arrangements([7], [4, 5], seed=0) if c.label.startswith("generic")]
for case in cases:
    row = run_case(case, 0)
    print(f"{row['case']:>16}: points {row['singular_points']}, sum mu {row['sum_mu']}, D {row['D_predicted']}")
    for name, value in row["reference_values"].items():
        print(f"{'':>18}{name} = {value}")
    if row["reference_flag"]:
        print(f"{'':>18}-> {row['reference_flag']}")
