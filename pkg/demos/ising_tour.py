"""A walk through the Ising ring: dimensions, gradings, modular data.

Run with ``python demos/ising_tour.py``.
"""
from __future__ import annotations

from fusionkit import (
    adjoint_subring,
    fpdim_ring,
    fpdims,
    ising_modular_data,
    ising_ring,
    is_generalized_TY,
    muger_center,
    nilpotency_series,
    type_signature,
    universal_grading,
    validate,
    validate_modular,
    verlinde_coefficients,
)


def main():
    ring = ising_ring()
    print(f"{ring.name}: rank {ring.rank}, axioms ok: {not validate(ring)}")
    for i in range(ring.rank):
        for j in range(i, ring.rank):
            print(f"  {ring.labels[i]} x {ring.labels[j]} = {ring.describe_product(i, j)}")
    print("dimensions:", ", ".join(f"{l}={d}" for l, d in zip(ring.labels, fpdims(ring))))
    print("type:", type_signature(ring), " global dimension:", fpdim_ring(ring))
    print("adjoint subring:", adjoint_subring(ring))
    print("universal grading:", universal_grading(ring))
    nil = nilpotency_series(ring)
    print("adjoint series:", " > ".join(map(repr, nil.series)), f"(class {nil.nilpotency_class})")
    w = is_generalized_TY(ring)
    print(f"generalized TY: stabilizer of order {len(w.stabilizer)}, index {w.index}")

    print("\nthe eight modular data on this ring:")
    for e in range(1, 16, 2):
        md = ising_modular_data(e)
        ok = not validate_modular(md) and not verlinde_coefficients(md).violations
        print(f"  t_X = zeta_16^{e:<2}  valid: {ok}  trivial center: {muger_center(md).is_trivial()}")


if __name__ == "__main__":
    main()
