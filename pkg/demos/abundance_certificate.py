"""End-to-end construction of a certified 2D set of progression pairs.

Starting from a striped 1D set, runs every pipeline stage by hand so the
intermediate objects are visible, then lets fg_construct repeat the run,
serializes the certificate, and re-checks it with the independent
verifier -- including what happens when the certificate is tampered with.
"""

from syndetic import (
    DigestMismatchError,
    color_classes,
    fg_construct,
    parse,
    pigeonhole_extract,
    progression_pairs,
    ps_scale_1d,
    ps_scale_2d,
    serialize,
    shifted_union_1d,
    striped_set,
    vdw_span,
    verify_fg,
)

s = striped_set((0, 300), 5, 2)
radius, steps = 2, 2
print("input:", s)
print("longest run of the shifted union:", ps_scale_1d(s, radius))

span = vdw_span(radius, steps).span
print("index span forced by W(2,3):", span)

# Stage by stage.
pair_set = progression_pairs(s, radius, span, box=(0, 100, -4, 5))
print("progression pairs in a 100 x 9 box:", pair_set.pairs.count,
      f"(boundary-excluded: {pair_set.boundary_excluded})")

classes = color_classes(s, pair_set.pairs, radius=radius, span=span, steps=steps)
print("label classes:", len(classes))
for triple, cls in sorted(classes.items(), key=lambda kv: kv[0].sort_key())[:4]:
    print(f"  {triple}: {cls.count} pairs, 2d scale {ps_scale_2d(cls, span)}")

triple, chosen, scale = pigeonhole_extract(classes, span)
print("chosen class:", triple, "with scale", scale)

# The packaged run: one call, one certificate.
cert = fg_construct(s, radius, steps)
print("\ncertificate: pairs =", cert.class_count, "| 2d scale =", cert.length_out)
doc = serialize(cert)
print("document:", len(doc.splitlines()), "lines; round-trips:",
      parse(doc) == cert)

verdict = verify_fg(cert, s)
print("verifier:", "PASS" if verdict.passed else f"FAIL {verdict.failed_claim}")

# Tampering is caught: inflate the claimed 2D scale by one.
bad = cert.with_field(length_out=cert.length_out + 1)
verdict = verify_fg(bad, s)
print("tampered scale:", "PASS" if verdict.passed else
      f"FAIL {verdict.failed_claim} ({verdict.detail})")

# A different input is refused outright, not judged.
other = striped_set((0, 300), 5, 3)
try:
    verify_fg(cert, other)
except DigestMismatchError as exc:
    print("foreign input:", exc)
