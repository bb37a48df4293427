"""The whole verification pipeline on one polynomial."""
import json

from expsums import build_field, parse, verify
from expsums.cli import format_report

f = parse("x1^2*x2 + x2^2", 2, build_field(5))
rep = verify(f, m_max=6)
print(format_report(rep))

# the JSON form carries every exact value
doc = rep.to_json()
print("S_1 exact:", doc["sums"]["S"][0])
print("elementary symmetric functions:", [e["coeffs"] for e in doc["recovery"]["elementary"]])
print(json.dumps(doc["euler_chain"], indent=2))

# hypotheses can fail; that is a result, not an error
bad = verify(parse("x1^4 + x2^3", 2, build_field(3)), m_max=1)
print(bad.verdict, "-", "; ".join(bad.hypotheses.reasons))
