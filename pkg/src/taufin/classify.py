"""Rule-based verdicts on tau-tilting finiteness and silting-discreteness of T_n(A).

Each rule encodes a published theorem; its hypotheses are checked explicitly
(loops, vertex counts, construction tags) and never assumed. Verdicts carry a
single rule id together with the name of the result and a short quotation
from its statement, both read from :data:`PROVENANCE`.

The crosscheck harness pairs every verdict with an independent exchange-graph
exploration and flags contradictions.
"""

from __future__ import annotations

import json
import logging
import multiprocessing as mp
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import (
    BoundPresentation,
    compute_algebra,
    is_local,
    is_nakayama,
    is_path_algebra_An,
    is_radical_square_zero,
    radical_square_truncation,
    tensor_product,
    build_truncated_polynomial,
    triangular_matrix,
)
from .algfile import load_algebra
from .field import Field
from .quiver import component_types, has_loop, is_cyclic_shape, is_linear_An_shape, separated_quiver
from .tautilt import DEFAULT_MAX_MODULE_DIM, degree_multisets, explore

log = logging.getLogger(__name__)

TAU_FINITE = "TauFinite"
TAU_INFINITE = "TauInfinite"
SILTING_DISCRETE = "SiltingDiscrete"
NOT_SILTING_DISCRETE = "NotSiltingDiscrete"
UNKNOWN = "Unknown"
CONCLUSIONS = (TAU_FINITE, TAU_INFINITE, SILTING_DISCRETE, NOT_SILTING_DISCRETE, UNKNOWN)

# rule id -> (result, quotation from its statement)
PROVENANCE: dict[str, tuple[str, str]] = {
    "R1": ("Proposition polynomial (1)", "then T_n(Λ) is silting-discrete"),
    "R2": ("Proposition polynomial (2)", "then we have n≤4"),
    "R3": ("Theorem s3", "Nakayama algebra with radical square zero"),
    "R4": ("Theorem s2", "n=4 and Λ=KA₂"),
    "R5": ("Example CL", "commutative ladder of degree n"),
    "R6": ("Theorem necessary", "which is not of type A_n"),
    "R7": ("Proposition third", "T₂³(Λ) is τ-tilting infinite"),
    "S1": ("Proposition polynomial (1)", "then T_n(Λ) is silting-discrete"),
    "S2": ("Theorem lsd", "(iii) n=2 and 1<r≤4"),
    "S3": ("Theorem sd", "In particular, Γ is also silting-discrete"),
    "2rad2": ("Lemma 2rad2", "we have a poset isomorphism"),
}


class HypothesisError(ValueError):
    """Input violates the standing assumptions (connected, basic, n >= 1)."""


@dataclass(frozen=True)
class Verdict:
    conclusion: str
    rule: str | None = None
    reductions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.conclusion not in CONCLUSIONS:
            raise ValueError(f"unknown conclusion {self.conclusion!r}")
        if (self.conclusion == UNKNOWN) != (self.rule is None):
            raise ValueError("Unknown verdicts carry no rule; all others carry exactly one")

    @property
    def provenance(self) -> tuple[str, str] | None:
        return PROVENANCE[self.rule] if self.rule else None

    def to_json(self) -> dict:
        out = {"conclusion": self.conclusion, "rule": self.rule}
        if self.rule:
            result, quote = PROVENANCE[self.rule]
            out["result"] = result
            out["quote"] = quote
        if self.reductions:
            out["reductions"] = list(self.reductions)
        return out


def _check_hypotheses(pres: BoundPresentation, n: int) -> None:
    if n < 1:
        raise HypothesisError("n must be at least 1")
    if not pres.quiver.is_connected():
        raise HypothesisError("the algebra is not ring-indecomposable (disconnected quiver)")


def _nonlocal_factor_count(pres: BoundPresentation, n: int) -> int:
    """Nonlocal tensor factors of T_n(pres) known from construction tags."""
    factors = [f for f in pres.tensor_factors() if not is_local(f)]
    return len(factors) + (1 if n >= 2 else 0)


def _is_KA2(pres: BoundPresentation) -> bool:
    return len(pres.quiver.vertices) == 2 and is_path_algebra_An(pres)


def classify_tn_tau_finiteness(pres: BoundPresentation, n: int) -> Verdict:
    """Verdict on tau-tilting finiteness of ``T_n(pres)``: first matching rule wins."""
    _check_hypotheses(pres, n)
    reduced, note = reduce_2rad2(pres, n)
    verdict = _first_rule(reduced, n)
    if note:
        verdict = Verdict(verdict.conclusion, verdict.rule, verdict.reductions + (note,))
    return verdict


def _first_rule(pres: BoundPresentation, n: int) -> Verdict:
    q = pres.quiver
    nv = len(q.vertices)
    loops = has_loop(q)
    if is_local(pres):
        return Verdict(TAU_FINITE, "R1")
    if n >= 5:
        return Verdict(TAU_INFINITE, "R2")
    if n >= 3 and nv >= 3 and not loops:
        ok = n == 3 and is_nakayama(pres) and is_radical_square_zero(pres)
        return Verdict(TAU_FINITE if ok else TAU_INFINITE, "R3")
    if n >= 3 and nv == 2 and not loops:
        ok = (n == 3 and is_nakayama(pres)) or (n == 4 and _is_KA2(pres))
        return Verdict(TAU_FINITE if ok else TAU_INFINITE, "R4")
    if n == 2 and is_path_algebra_An(pres):
        return Verdict(TAU_FINITE if nv <= 4 else TAU_INFINITE, "R5")
    if n == 2 and not loops:
        if any(t.kind != "A" for _, t in component_types(separated_quiver(q))):
            return Verdict(TAU_INFINITE, "R6")
    if _nonlocal_factor_count(pres, n) >= 3:
        return Verdict(TAU_INFINITE, "R7")
    return Verdict(UNKNOWN)


def _is_rad2_linear_nakayama(pres: BoundPresentation) -> bool:
    return is_linear_An_shape(pres.quiver) and is_radical_square_zero(pres)


def classify_silting_discreteness(pres: BoundPresentation, n: int) -> Verdict:
    _check_hypotheses(pres, n)
    if is_local(pres):
        return Verdict(SILTING_DISCRETE, "S1")
    if _is_rad2_linear_nakayama(pres):
        r = len(pres.quiver.vertices)
        ok = n == 1 or r == 1 or (n == 2 and 1 < r <= 4) or (1 < n <= 4 and r == 2)
        return Verdict(SILTING_DISCRETE if ok else NOT_SILTING_DISCRETE, "S2")
    tag = pres.tag
    if tag is not None and tag.kind == "tensor" and len(tag.factors) == 2:
        a, b = tag.factors
        for local, other in ((a, b), (b, a)):
            if is_local(local) and other.quiver.is_connected():
                if classify_silting_discreteness(other, n).conclusion == SILTING_DISCRETE:
                    return Verdict(SILTING_DISCRETE, "S3")
    return Verdict(UNKNOWN)


def reduce_2rad2(pres: BoundPresentation, n: int | None = None) -> tuple[BoundPresentation, str | None]:
    """Replace a 2-simple cyclic Nakayama algebra by its radical-square-zero quotient."""
    q = pres.quiver
    if len(q.vertices) == 2 and is_cyclic_shape(q):
        if is_radical_square_zero(pres):
            return pres, None
        note = (
            f"replaced Λ by Λ/rad² ({PROVENANCE['2rad2'][0]}): the support τ-tilting posets of "
            f"T_{n if n is not None else 'n'}(Λ) and T_{n if n is not None else 'n'}(Λ/rad²) are isomorphic"
        )
        return radical_square_truncation(pres), note
    return pres, None


# -- crosscheck ------------------------------------------------------------------

@dataclass
class CorpusItem:
    item: str
    presentation: BoundPresentation
    n: int
    expected: str | None = None  # a conclusion or None for "unknown"


def load_corpus(path: str | Path) -> list[CorpusItem]:
    """Corpus lines: ``<algebra file> <n> <expected conclusion | unknown>``."""
    path = Path(path)
    items = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected '<file> <n> <expected>'")
        fname, n, expected = parts
        pres = load_algebra(path.parent / fname)
        exp = None if expected.lower() == "unknown" else expected
        if exp is not None and exp not in CONCLUSIONS:
            raise ValueError(f"{path}:{lineno}: unknown conclusion {expected!r}")
        items.append(CorpusItem(f"{Path(fname).stem}@n={n}", pres, int(n), exp))
    return items


@dataclass
class CrosscheckConfig:
    budget: int = 5000
    max_seconds: float = 120.0
    seed: int = 0
    max_module_dim: int | None = DEFAULT_MAX_MODULE_DIM
    second_prime: int = 10007
    sd_shadow: list[tuple[str, BoundPresentation]] = dc_field(default_factory=list)
    rad2_pairs: list[tuple[str, BoundPresentation, int]] = dc_field(default_factory=list)


def _explore_summary(pres: BoundPresentation, cfg: CrosscheckConfig):
    alg = compute_algebra(pres)
    return explore(alg, cfg.budget, cfg.max_seconds, cfg.seed, max_module_dim=cfg.max_module_dim)


def _explorer_json(report) -> dict:
    out = {"status": report.status, "count": report.count}
    if report.stopped_by:
        out["stopped_by"] = report.stopped_by
    return out


def check_item(item: CorpusItem, cfg: CrosscheckConfig) -> dict:
    verdict = classify_tn_tau_finiteness(item.presentation, item.n)
    base, note = reduce_2rad2(item.presentation, item.n)
    target = triangular_matrix(base, item.n)
    report = _explore_summary(target, cfg)
    problems = []
    if verdict.conclusion == TAU_FINITE and not report.finite:
        problems.append("classifier TauFinite but the explorer did not close up within budget")
    if verdict.conclusion == TAU_INFINITE and report.finite:
        problems.append("classifier TauInfinite but the explorer terminated Finite")
    if item.expected is not None and verdict.conclusion != item.expected:
        problems.append(f"expected {item.expected}, classifier said {verdict.conclusion}")
    out = {
        "item": item.item,
        "n": item.n,
        "classifier": verdict.to_json(),
        "explorer": _explorer_json(report),
        "consistent": not problems,
    }
    if note:
        out["reduction"] = note
    if item.expected is not None:
        out["expected"] = item.expected
    if problems:
        out["problems"] = problems
        # flag prime sensitivity: rerun the exploration over a second prime
        other = target.with_field(Field(cfg.second_prime))
        rep2 = _explore_summary(other, cfg)
        out["second_prime"] = {"field": f"fp:{cfg.second_prime}", **_explorer_json(rep2)}
    return out


def experiment_sd_shadow(name: str, pres: BoundPresentation, cfg: CrosscheckConfig) -> dict:
    """Count support tau-tilting pairs of A and of A (x) K[x]/(x^2)."""
    ext = tensor_product(pres, build_truncated_polynomial(2, pres.field))
    r1 = _explore_summary(pres, cfg)
    r2 = _explore_summary(ext, cfg)
    ok = r1.finite and r2.finite and r1.count == r2.count
    return {
        "item": f"experiment:sd:{name}",
        "counts": [r1.count, r2.count],
        "status": [r1.status, r2.status],
        "provenance": list(PROVENANCE["S3"]),
        "consistent": ok,
    }


def experiment_2rad2(name: str, pres: BoundPresentation, n: int, cfg: CrosscheckConfig) -> dict:
    """Compare T_n(A) with T_n(A/rad^2): counts and Hasse degree multisets."""
    reduced, _ = reduce_2rad2(pres, n)
    r1 = _explore_summary(triangular_matrix(pres, n), cfg)
    r2 = _explore_summary(triangular_matrix(reduced, n), cfg)
    same = r1.finite and r2.finite and r1.count == r2.count
    if same:
        same = degree_multisets(r1) == degree_multisets(r2)
    return {
        "item": f"experiment:2rad2:{name}@n={n}",
        "counts": [r1.count, r2.count],
        "status": [r1.status, r2.status],
        "provenance": list(PROVENANCE["2rad2"]),
        "consistent": same,
    }


def _run_item(args):
    item, cfg = args
    return check_item(item, cfg)


def crosscheck(items: list[CorpusItem], cfg: CrosscheckConfig | None = None, workers: int = 1) -> list[dict]:
    """Run every corpus item plus the configured experiments; never aborts early."""
    cfg = cfg or CrosscheckConfig()
    if workers > 1 and len(items) > 1:
        with mp.get_context("fork").Pool(workers) as pool:
            rows = pool.map(_run_item, [(it, cfg) for it in items])
    else:
        rows = [check_item(it, cfg) for it in items]
    for name, pres in cfg.sd_shadow:
        rows.append(experiment_sd_shadow(name, pres, cfg))
    for name, pres, n in cfg.rad2_pairs:
        rows.append(experiment_2rad2(name, pres, n, cfg))
    rows.sort(key=lambda r: r["item"])
    for r in rows:
        if not r["consistent"]:
            log.warning("inconsistent: %s", json.dumps(r, ensure_ascii=False))
    return rows


def all_consistent(rows: list[dict]) -> bool:
    return all(r["consistent"] for r in rows)
