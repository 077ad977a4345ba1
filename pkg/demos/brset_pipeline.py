"""Round trip between Sidon spaces and B_r-sets of integers.

Forward: a 2-Sidon trace space in F_3^9 maps through discrete logs to a
B_2-set modulo (3^9 - 1)/2 = 9841. Backward: the integer B_3-set
{0, 1, 4, 16} seeds a 4-dimensional space in F_2^49 whose triple products
are collision free. Run with:

    python3 demos/brset_pipeline.py
"""

from sidonspace.brset import extract_brset, is_br_set
from sidonspace.constructions import maxspan_from_brset, trace_space
from sidonspace.field import find_generator
from sidonspace.sidon import is_r_sidon


def forward() -> None:
    rec = trace_space(3, 3, 3)
    V = rec.space
    print(f"trace space in F_3^9: dim {V.dim}, "
          f"2-Sidon = {is_r_sidon(V, 2).verdict}")

    gamma = find_generator(V.ctx, primitive=True)
    bs = extract_brset(V, 2, gamma)
    print(f"extracted {bs.size} residues mod {bs.modulus}: {sorted(bs.elements)}")

    ok, witness = is_br_set(bs.elements, 2, modulus=bs.modulus)
    print(f"independent B_2 recheck: {ok} (witness = {witness})")


def backward() -> None:
    S = [0, 1, 4, 16]
    ok, _ = is_br_set(S, 3)
    print(f"\n{S} is a B_3-set over the integers: {ok}")

    rec = maxspan_from_brset(S, 2, 3, 49)
    V = rec.space
    print(f"powers gamma^s for s in S span dim {V.dim} in F_2^49")
    print(f"measured dim V^3 = {rec.measured['r_span_dim']} "
          f"(the cap C(6,3) = {rec.claims['r_span_dim']})")

    rep = is_r_sidon(V, 3)
    print(f"3-Sidon: {rep.verdict} "
          f"({rep.details['multisets_checked']} triple multisets checked)")


def main() -> None:
    forward()
    backward()


if __name__ == "__main__":
    main()
