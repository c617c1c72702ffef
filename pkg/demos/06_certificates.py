"""Certificates: packaging claims so anyone can re-check them.

A certificate carries the instance, a claim (a witness for packability, or
exhaustive unpackability), an optional witness, and provenance metadata.
The verifier re-derives everything from the instance: witnesses are checked
edge by edge, unpackability by exhausting all canonical candidates.  The
serialized form has a fixed field order, so byte comparison is meaningful.
"""

import json

from packlab import (
    decide_correspondence_packing,
    k22_unpackable_cover,
    make_certificate,
    standard_cover,
    verify_certificate,
)
from packlab.certificates import Certificate, witness_dict_for_cover

print("an unpackability certificate for the twisted K_{2,2} cover:")
cert = make_certificate("no_k_packing", k22_unpackable_cover(), None, generator="demo")
text = cert.to_canonical_json()
print(text)
print("verifier says:", verify_certificate(cert))

print("round trip is byte-exact:",
      Certificate.from_json(text).to_canonical_json() == text)

print("\ntampering with one matching is caught with counter-evidence:")
data = json.loads(text)
data["instance"]["sigma"][1][1] = "(1,2,3)"
result = verify_certificate(Certificate.from_json_dict(data))
print("  accepted:", result.accepted)
print("  reason:", result.reason)
print("  evidence:", result.evidence)

print("\na witness certificate for the all-identity cover:")
cover = standard_cover(2, 2, 3)
witness = decide_correspondence_packing(cover)
wcert = make_certificate(
    "packing_witness",
    cover,
    witness_dict_for_cover(witness.u_rows, witness.v_rows),
    generator="demo",
)
print("  verifier says:", verify_certificate(wcert))
