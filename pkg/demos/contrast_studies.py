"""Two cautionary measurements: where plausible claims break.

First: the square-graph recipe {u + u^2 gamma : u in F_8} is 2-Sidon for
every admissible gamma when the ambient field is F_2^9, and for none of
them when it is F_2^6. The ambient degree matters, not just the recipe.

Second: the layered span law dim V^r = rk for scattered-monomial graphs
needs k >= 3. At k = 2 every level hits the universal cap C(r+1, r) =
r + 1 instead, which is smaller from r = 2 on. Run with:

    python3 demos/contrast_studies.py
"""

import math

from sidonspace.constructions import monomial
from sidonspace.experiments import ExperimentSpec, run_experiment


def ambient_degree_matters() -> None:
    rep = run_experiment(ExperimentSpec("prop-f26"))
    for row in rep.rows:
        c = row["computed"]
        print(f"{row['field']}: {row['gamma_count']} admissible gamma, "
              f"{c['two_sidon']} give a 2-Sidon space, "
              f"{c['three_sidon']} a 3-Sidon one")
    bad = next(r for r in rep.rows if "first_non_two_sidon" in r)
    gamma = bad["first_non_two_sidon"]["gamma"]
    print(f"first failing gamma in {bad['field']}: {gamma}")
    print(f"experiment verdict: {rep.verdict} (the mismatch is real)")


def small_k_hits_the_cap() -> None:
    print()
    for k in (2, 3):
        rec = monomial(2, k, 1, 5, 4)
        dims = rec.measured["span_dims"]
        layered = [r * k for r in range(2, 5)]
        caps = [min(rec.params["n"], math.comb(k + r - 1, r)) for r in range(2, 5)]
        print(f"k = {k}: measured dims of V^2, V^3, V^4 = {dims}")
        print(f"       layered law rk        = {layered}")
        print(f"       universal cap         = {caps}")
        print(f"       follows {'the cap' if dims == caps else 'the layered law'}")


def main() -> None:
    ambient_degree_matters()
    small_k_hits_the_cap()


if __name__ == "__main__":
    main()
