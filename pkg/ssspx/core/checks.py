# ssspx/core/checks.py
"""
Debug-mode invariant checks against oracle labels.

Every check appends to an InvariantReport instead of raising, so one solve
can surface all of its violations at once.
"""
from collections import defaultdict
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from ssspx.core.graph import Graph
from ssspx.core.labels import NO_PRED, DistLabel
from ssspx.core.oracle import OracleResult, chain_meets, true_targets
from ssspx.utils.error_handler import InvariantReport


def complete(oracle: OracleResult, labels: Sequence[DistLabel], v: int) -> bool:
    return labels[v] == oracle.labels[v]


def check_frontier(oracle: OracleResult, labels: Sequence[DistLabel], B: DistLabel,
                   S: Iterable[int], X: Iterable[int], Y: Iterable[int],
                   report: InvariantReport, stage: str = 'frontier') -> bool:
    """<X, Y> is a frontier for targets(B, S)."""
    targets = true_targets(oracle, B, S)
    xs = set(X)
    complete_y = [y for y in Y if complete(oracle, labels, y)]
    meets_y = chain_meets(oracle, complete_y)
    bad = [v for v in targets
           if not ((v in xs and complete(oracle, labels, v)) or meets_y[v])]
    if bad:
        report.log_violation(stage, 'pair is not a frontier for the target set',
                             {'uncovered': sorted(bad)[:20], 'count': len(bad)})
        return False
    return True


def check_frame(oracle: OracleResult, labels: Sequence[DistLabel], B: DistLabel, S: Sequence[int],
                B_prime: DistLabel, U: Sequence[int], D_keys: Iterable[int], full: bool,
                report: InvariantReport, level: int) -> bool:
    ok = True
    stage = f'frame[l={level}]'
    u_set = set(U)
    if len(u_set) != len(U):
        report.log_violation(stage, 'U holds duplicates', {'size': len(U), 'distinct': len(u_set)})
        ok = False
    expected = true_targets(oracle, B_prime, S)
    if u_set != expected:
        report.log_violation(stage, "U differs from targets(B', S)", {
            'missing': sorted(expected - u_set)[:20],
            'extra': sorted(u_set - expected)[:20],
        })
        ok = False
    incomplete = [u for u in U if not complete(oracle, labels, u)]
    if incomplete:
        report.log_violation(stage, 'U holds incomplete vertices', {'vertices': incomplete[:20]})
        ok = False
    if B_prime > B:
        report.log_violation(stage, "B' exceeds B", {'B_prime': B_prime, 'B': B})
        ok = False
    d_keys = list(D_keys)
    if full and d_keys:
        report.log_violation(stage, 'full execution returned a non-empty D', {'size': len(d_keys)})
        ok = False
    if full != (B_prime == B):
        report.log_violation(stage, "status disagrees with B' == B", {'full': full})
        ok = False
    if not check_frontier(oracle, labels, B, S, U, d_keys, report, stage=f'{stage}/frontier'):
        ok = False
    return ok


def check_pred_chains(g: Graph, labels: Sequence[DistLabel], report: InvariantReport) -> bool:
    """Every set label extends its pred's label along some edge pred -> v."""
    weights: Dict[Tuple[int, int], List[float]] = defaultdict(list)
    for u, v, w in g.edges():
        weights[(u, v)].append(w)
    bad: List[int] = []
    for v, lab in enumerate(labels):
        if not lab.is_finite() or lab.pred == NO_PRED:
            continue
        pl = labels[lab.pred]
        if not pl.is_finite() or pl.n_edges + 1 != lab.n_edges:
            bad.append(v)
            continue
        if not any(pl.length + w == lab.length for w in weights.get((lab.pred, v), ())):
            bad.append(v)
    if bad:
        report.log_violation('pred-chain', 'label length differs from its pred chain sum',
                             {'vertices': bad[:20], 'count': len(bad)})
        return False
    return True


def check_labels_match(oracle: OracleResult, labels: Sequence[DistLabel],
                       report: InvariantReport, stage: str = 'final') -> Set[int]:
    mismatched = {v for v in range(len(labels)) if labels[v] != oracle.labels[v]}
    if mismatched:
        report.log_violation(stage, 'labels differ from the oracle',
                             {'vertices': sorted(mismatched)[:20], 'count': len(mismatched)})
    return mismatched
