"""The rule engine: certificates for trivial vanishing, the uniform
Auslander condition, and Gorenstein tests, plus theorem-derived data checks.

All inequalities involving the square-root threshold are decided by integer
arithmetic (squaring with sign guards); no floating point decides anything.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .homology import ext
from .invariants import RingInvariants, ring_invariants
from .koszul import TorAlgebraClass
from .modules import GradedModule, ulrich_index
from .resolution import BettiTable, limit_ratio, resolve

STANDING_CAVEATS = (
    "results apply to the supplied graded Artinian algebra; if it stands in for a "
    "positive-dimensional ring, the caller certifies it is a valid Artinian reduction",
    "the Loewy length is that of the supplied algebra; maximality over general "
    "reductions is the caller's responsibility",
)


@dataclass
class Certificate:
    verdict: str
    rule: str
    citation: str
    witnesses: dict = field(default_factory=dict)
    caveats: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)
    annotations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "rule": self.rule,
            "citation": self.citation,
            "witnesses": self.witnesses,
            "caveats": list(self.caveats),
            "assumptions": list(self.assumptions),
            "annotations": list(self.annotations),
        }


# ---------------------------------------------------------------------------
# The square-root growth threshold (4c + 2l - 1 - sqrt(8c + 4l - 3)) / 2


def growth_threshold(c: int, ell: int) -> dict:
    """Exact description of the threshold plus a truncated decimal rendering."""
    if c < 0 or ell < 1:
        raise ValidationError("need c >= 0 and ell >= 1")
    a = 4 * c + 2 * ell - 1
    r = 8 * c + 4 * ell - 3
    s = math.isqrt(r)
    exact_integer = s * s == r
    scale = 10**4
    cand = (a * scale - math.isqrt(r * scale * scale)) // 2
    while not _value_at_least(a, r, Fraction(cand, scale)):
        cand -= 1
    while _value_at_least(a, r, Fraction(cand + 1, scale)):
        cand += 1
    decimal = f"{cand // scale}.{cand % scale:04d}"
    return {
        "linear_part": a,
        "radicand": r,
        "is_exact_integer": exact_integer,
        "value": (a - s) // 2 if exact_integer else None,
        "decimal_truncated": decimal,
        "form": f"({a} - sqrt({r}))/2",
    }


def _value_at_least(a: int, r: int, q: Fraction) -> bool:
    """Is (a - sqrt(r))/2 >= q?  Decided exactly by squaring."""
    t = Fraction(a) - 2 * q
    if t < 0:
        return False
    return t * t >= r


def compare_threshold(c: int, ell: int, q) -> int:
    """Sign of q - threshold(c, ell): -1 below, 0 equal, +1 above. Exact."""
    a = 4 * c + 2 * ell - 1
    r = 8 * c + 4 * ell - 3
    q = Fraction(q)
    t = Fraction(a) - 2 * q
    if t < 0:
        return 1
    t2 = t * t
    if t2 > r:
        return -1
    if t2 == r:
        return 0
    return 1


# ---------------------------------------------------------------------------
# Generalized-Golod evidence (automatic flags plus caller assertions)

USER_GG_FLAGS = (
    "one_link_from_ci",
    "two_links_from_ci_gorenstein",
    "almost_ci_codim_4",
    "huneke_ulrich",
    "determinantal",
    "compressed",
)


@dataclass
class GGEvidence:
    automatic: dict
    asserted: list
    verdict: str  # "yes" or "unasserted"
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "automatic": self.automatic,
            "asserted": list(self.asserted),
            "verdict": self.verdict,
            "reason": self.reason,
        }


def gg_evidence(inv: RingInvariants, asserted_flags=()) -> GGEvidence:
    for flag in asserted_flags:
        if flag not in USER_GG_FLAGS:
            raise ValidationError(
                f"unknown generalized-Golod assertion {flag!r}; known: {', '.join(USER_GG_FLAGS)}"
            )
    auto = {
        "ci": bool(inv.complete_intersection),
        "codim_le_3": inv.c is not None and inv.c <= 3,
        "gorenstein_codim_le_4": bool(inv.gorenstein) and inv.c is not None and inv.c <= 4,
        "gorenstein_e_le_11": bool(inv.gorenstein) and inv.e is not None and inv.e <= 11,
        "gorenstein_m4_mu2_le_4": bool(inv.gorenstein)
        and bool(inv.m4_zero)
        and inv.mu_m2 is not None
        and inv.mu_m2 <= 4,
        "stretched": bool(inv.stretched),
    }
    fired = [name for name, v in auto.items() if v]
    if fired:
        return GGEvidence(auto, list(asserted_flags), "yes", reason=fired[0])
    if asserted_flags:
        return GGEvidence(auto, list(asserted_flags), "yes", reason=f"asserted:{asserted_flags[0]}")
    return GGEvidence(auto, [], "unasserted")


# ---------------------------------------------------------------------------
# Trivial vanishing rule ladder


def certify_trivial_vanishing(
    inv: RingInvariants,
    gg: GGEvidence,
    deformation: str,
    cls: TorAlgebraClass | None = None,
    assumptions=(),
) -> Certificate:
    e, c, ell = inv.e, inv.c, inv.ell
    caveats = list(STANDING_CAVEATS)
    assumptions = list(assumptions)
    if inv.asserted:
        assumptions.append("ring invariants asserted by the caller, not computed")

    def cert(verdict, rule, citation, **witnesses):
        out = Certificate(verdict, rule, citation, witnesses, caveats, assumptions)
        _annotate_complexity_cap(out, inv, gg)
        return out

    if c is not None and c <= 1:
        return cert(
            "TrivialVanishing",
            "tv.hypersurface",
            "rings of codimension at most one satisfy trivial vanishing",
            c=c,
        )
    if c is not None and c >= 2 and deformation == "yes":
        return cert(
            "NotTrivialVanishing",
            "tv.embedded_deformation",
            "an embedded deformation in codimension at least two rules out trivial vanishing",
            c=c,
            embedded_deformation="yes",
            tor_algebra_class=cls.label() if cls else None,
            complete_intersection=inv.complete_intersection,
        )
    if c == 2:
        if inv.complete_intersection is None:
            return cert(
                "Inconclusive",
                "tv.codim2",
                "codimension two is decided by the complete intersection property, which is unknown here",
                c=c,
            )
        return cert(
            "TrivialVanishing",
            "tv.codim2_non_ci",
            "in codimension two, trivial vanishing holds exactly for non complete intersections",
            c=c,
            complete_intersection=False,
        )
    if c == 3:
        if deformation == "no":
            return cert(
                "TrivialVanishing",
                "tv.codim3_no_deformation",
                "in codimension three, trivial vanishing holds exactly when there is no embedded deformation",
                tor_algebra_class=cls.label() if cls else None,
            )
        return cert(
            "Inconclusive",
            "tv.codim3_unclassified",
            "the codimension-three test needs the homology-algebra class, which is unresolved here",
            tor_algebra_class=cls.label() if cls else None,
        )
    if e is not None and c is not None and ell is not None and compare_threshold(c, ell, e) < 0:
        th = growth_threshold(c, ell)
        return cert(
            "TrivialVanishing",
            "tv.multiplicity_gap",
            "multiplicity strictly below (4c + 2l - 1 - sqrt(8c + 4l - 3))/2 forces trivial vanishing",
            e=e,
            threshold=th["form"],
            threshold_decimal=th["decimal_truncated"],
        )
    if gg.verdict == "yes" and e is not None and c is not None and ell is not None and e <= 2 * c + ell - 4:
        return cert(
            "TrivialVanishing",
            "tv.generalized_golod_margin",
            "a generalized Golod ring with e <= 2c + l - 4 satisfies trivial vanishing",
            e=e,
            bound=2 * c + ell - 4,
            comparison=f"{e} <= {2 * c + ell - 4}",
            gg_reason=gg.reason,
        )
    if inv.stretched and c is not None and c >= 3:
        return cert(
            "TrivialVanishing",
            "tv.stretched",
            "stretched rings of codimension at least three satisfy trivial vanishing",
            e=e,
            c=c,
            ell=ell,
        )
    if e is not None and (e <= 7 or (inv.gorenstein and e <= 11)):
        if deformation == "no":
            return cert(
                "TrivialVanishing",
                "tv.small_multiplicity",
                "with e <= 7, or e <= 11 in the Gorenstein case, trivial vanishing is "
                "equivalent to the absence of an embedded deformation",
                e=e,
                gorenstein=inv.gorenstein,
                embedded_deformation="no",
            )
        return cert(
            "Inconclusive",
            "tv.small_multiplicity_undecided",
            "the small-multiplicity test is equivalent to the absence of an embedded "
            "deformation, which could not be decided here",
            e=e,
            embedded_deformation=deformation,
        )
    return cert(
        "Inconclusive",
        "tv.no_rule",
        "no implemented criterion applies to these invariants",
        e=e,
        c=c,
        ell=ell,
    )


def _annotate_complexity_cap(cert: Certificate, inv: RingInvariants, gg: GGEvidence) -> None:
    e, c, ell = inv.e, inv.c, inv.ell
    if e is None or c is None or ell is None or gg.verdict != "yes":
        return
    if e <= 2 * c + ell - 3 and not e <= 2 * c + ell - 4:
        cert.annotations.append(
            {
                "rule": "tv.complexity_cap",
                "citation": "over a generalized Golod ring with e <= 2c + l - 3, any pair "
                "with eventually vanishing homology has a factor of complexity at most one",
                "holds": f"e <= 2c + l - 3 ({e} <= {2 * c + ell - 3})",
                "fails": f"e <= 2c + l - 4 ({e} > {2 * c + ell - 4})",
            }
        )


# ---------------------------------------------------------------------------
# Uniform Auslander condition / Auslander-Reiten ladder


def certify_auslander_reiten(
    inv: RingInvariants, gg: GGEvidence, tv_cert: Certificate | None, assumptions=()
) -> Certificate:
    e, c, ell = inv.e, inv.c, inv.ell
    caveats = list(STANDING_CAVEATS)
    assumptions = list(assumptions)
    if inv.asserted:
        assumptions.append("ring invariants asserted by the caller, not computed")

    def cert(verdict, rule, citation, **witnesses):
        out = Certificate(verdict, rule, citation, witnesses, caveats, assumptions)
        if verdict == "UAC":
            out.annotations.append(
                {
                    "rule": "ar.from_uac",
                    "citation": "the uniform Auslander condition settles the "
                    "Auslander-Reiten conjecture for this ring",
                    "auslander_reiten": "holds",
                }
            )
        return out

    if tv_cert is not None and tv_cert.verdict == "TrivialVanishing":
        return cert(
            "UAC",
            "ar.uac_from_trivial_vanishing",
            "trivial vanishing implies the uniform Auslander condition",
            tv_rule=tv_cert.rule,
        )
    if e is not None and c is not None and ell is not None and compare_threshold(c, ell, e) < 0:
        return cert(
            "UAC",
            "ar.uac_multiplicity_gap",
            "multiplicity strictly below the square-root growth threshold implies the "
            "uniform Auslander condition",
            e=e,
            threshold=growth_threshold(c, ell)["form"],
        )
    if c is not None and c <= 3:
        return cert(
            "UAC",
            "ar.uac_codim_le_3",
            "codimension at most three implies the uniform Auslander condition",
            c=c,
        )
    if e is not None and (e <= 7 or (inv.gorenstein and e <= 11)):
        return cert(
            "UAC",
            "ar.uac_small_multiplicity",
            "e <= 7, or e <= 11 in the Gorenstein case, implies the uniform Auslander condition",
            e=e,
            gorenstein=inv.gorenstein,
        )
    if e is not None and c is not None and Fraction(e) <= Fraction(7, 4) * c + 1:
        return cert(
            "ARholds",
            "ar.multiplicity_vs_codim",
            "e <= (7/4)c + 1 settles the Auslander-Reiten conjecture",
            e=e,
            bound=str(Fraction(7, 4) * c + 1),
        )
    if inv.gorenstein and e is not None and c is not None and e <= c + 6:
        return cert(
            "ARholds",
            "ar.gorenstein_margin",
            "a Gorenstein ring with e <= c + 6 settles the Auslander-Reiten conjecture",
            e=e,
            bound=c + 6,
        )
    if e is not None and e <= 8:
        return cert(
            "ARholds",
            "ar.multiplicity_le_8",
            "e <= 8 settles the Auslander-Reiten conjecture",
            e=e,
        )
    return cert(
        "Inconclusive",
        "ar.no_rule",
        "no implemented criterion applies to these invariants",
        e=e,
        c=c,
        ell=ell,
    )


# ---------------------------------------------------------------------------
# Gorenstein tests driven by one test module


def gorenstein_tests(algebra, module: GradedModule, module_id: str = "M") -> Certificate:
    """Hypothesis gates for the Ulrich-index Gorenstein tests on Artinian input.

    Route A needs u(M) < 2 and Ext^1(M, A) = 0.  Route B needs the algebra
    generically Gorenstein (here: tau = 1), u(M) <= 2, and Ext^1(M, A) = 0.
    When a route fires the verdict is GorensteinPredicted and tau = 1 is
    cross-checked; a mismatch raises the theorem-violation flag.
    """
    inv = ring_invariants(algebra)
    caveats = list(STANDING_CAVEATS)
    caveats.append(
        "for Artinian input, generically Gorenstein degenerates to Gorenstein; "
        "this gate is hypothesis checking plus consistency only"
    )
    m = module.minimize()
    if m.is_zero():
        raise ValidationError("the Gorenstein tests need a nonzero module")
    u = ulrich_index(m)
    free_rank_one = GradedModule.free(algebra, (0,))
    ext1 = ext(m, free_rank_one, 1, 1, first_id=module_id, second_id="A").dim(1)
    witnesses = {
        "module": module_id,
        "ulrich_index": str(u),
        "ext1_dim": ext1,
        "tau": inv.tau,
    }
    if inv.tau == 2:
        omega = free_rank_one.matlis_dual()
        bt = resolve(omega, 1, "omega").betti_table()
        witnesses["canonical_module_first_betti"] = {
            "beta0": bt.totals[0],
            "beta1": bt.totals[1],
            "note": "observational only; the two-generated bound hypothesis cannot "
            "hold for Artinian non-Gorenstein input",
        }
    route = None
    if u < 2 and ext1 == 0:
        route = (
            "gor.strict_ulrich_test",
            "a module with Ulrich index strictly below two and vanishing first "
            "self-dual cohomology against the ring forces the Gorenstein property",
        )
    elif inv.tau == 1 and u <= 2 and ext1 == 0:
        route = (
            "gor.ulrich_ext_test",
            "over a generically Gorenstein ring, a module with Ulrich index at most "
            "two and Ext^1(M, A) = 0 forces the Gorenstein property",
        )
    if route:
        rule, citation = route
        certificate = Certificate("GorensteinPredicted", rule, citation, witnesses, caveats)
        if inv.tau != 1:
            certificate.witnesses["THEOREM_VIOLATION"] = True
            certificate.caveats.append(
                "predicted Gorenstein but the socle dimension is not one; this "
                "indicates a defect and must be treated as a failure"
            )
        return certificate
    if ext1 != 0:
        failing = "vanishing window fails: Ext^1(M, A) != 0"
    elif u >= 2 and inv.tau != 1:
        failing = "generically-Gorenstein hypothesis fails (tau != 1) and u >= 2"
    else:
        failing = "ulrich index exceeds two"
    return Certificate(
        "NotApplicable",
        "gor.hypotheses_fail",
        "no Gorenstein test route applies to this module",
        {**witnesses, "failing_hypothesis": failing},
        caveats,
    )


# ---------------------------------------------------------------------------
# Theorem-derived data checks


def verify_growth_bounds(bt: BettiTable, inv: RingInvariants, mu_module: int) -> dict:
    """Check the two Betti growth inequalities above their threshold.

    For Artinian input the threshold is n > mu(M); any violation is reported
    (there should never be one, the bounds are theorems).
    """
    e, c, ell = inv.e, inv.c, inv.ell
    if e is None or c is None or ell is None:
        raise ValidationError("growth bounds need computed ring invariants")
    threshold = max(0, mu_module)
    if bt.steps <= threshold + 2:
        raise ValidationError(
            f"need more than {threshold + 2} computed steps for the growth bounds"
        )
    b = bt.totals
    checks = []
    violations = []
    for n in range(threshold + 1, bt.steps + 1):
        if n < 2:
            continue
        lhs = b[n]
        rhs1 = c * b[n - 1] - (e - c - ell + 2) * b[n - 2]
        rhs2 = (2 * c - e + ell - 2) * b[n - 1]
        ok1, ok2 = lhs >= rhs1, lhs >= rhs2
        checks.append({"n": n, "beta_n": lhs, "bound1": rhs1, "bound2": rhs2})
        if not (ok1 and ok2):
            violations.append(n)
    return {
        "module": bt.module_id,
        "threshold": threshold,
        "checked": [c_["n"] for c_ in checks],
        "details": checks,
        "violations": violations,
    }


def verify_ratio_bounds(
    bt_m: BettiTable,
    bt_n: BettiTable,
    torp,
    inv: RingInvariants,
    window: int = 4,
) -> dict:
    """Empirical check of the two limit-ratio inequalities under a fully
    vanishing homology window; window estimates only approximate the limits."""
    if not torp.all_zero():
        raise ValidationError(
            "the ratio bounds need a fully vanishing homology window over the computed range"
        )
    gm = limit_ratio(bt_m, window)
    gn = limit_ratio(bt_n, window)
    if gm.lr_estimate is None or gn.lr_estimate is None:
        return {
            "applicable": False,
            "reason": "a module has finite projective dimension within the computed range",
        }
    e, c, ell = inv.e, inv.c, inv.ell
    lrm, lrn = gm.lr_estimate, gn.lr_estimate
    product_bound = Fraction(e)
    second_bound = Fraction(e - c - ell + 2)
    return {
        "applicable": True,
        "caveat": "window estimates approximate the limiting ratios; this is "
        "empirical consistency data, not a certificate",
        "lr_m": str(lrm),
        "lr_n": str(lrn),
        "sum_form": {
            "lhs": str((lrm + 1) * (lrn + 1)),
            "rhs": str(product_bound),
            "holds": (lrm + 1) * (lrn + 1) <= product_bound,
        },
        "product_form": {
            "lhs": str(lrm * lrn),
            "rhs": str(second_bound),
            "holds": lrm * lrn <= second_bound,
        },
    }
