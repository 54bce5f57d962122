"""
Sweep drivers that check the Riemann-Roch family of identities on many
instances and collect every violation with a self-contained instance.

Each sweep is a deterministic function of its :class:`SweepConfig` (and of
an optional explicit instance list). Instances are independent; with
``cfg.jobs != 1`` they are checked by ``joblib`` workers and the partial
reports are merged by instance index.

Example:
    >>> from logpic.harness.sweeps import *  # NOQA
    >>> from logpic.graph import Multigraph
    >>> cfg = SweepConfig(degree_lo=-1, degree_hi=3)
    >>> sweep_rr_graph(cfg, graphs=[Multigraph.demo('C3')]).ok
    True
    >>> # the loop-blind rank breaks Riemann-Roch on a single loop
    >>> report = sweep_rr_graph(cfg, graphs=[Multigraph.demo('LOOP1')], rank='bn')
    >>> report.ok, sorted(v.detail['degree'] for v in report.violations)
    (False, [-1, 1, 2, 3])
"""
from __future__ import annotations

import time
from typing import Callable, Iterable, Sequence

import msgspec
from loguru import logger

from logpic.complexes import MetrizedComplex
from logpic.components import ComponentModel
from logpic.divisors import reduced_divisors
from logpic.exceptions import BoundExceededError, InputError, UnsupportedModelError
from logpic.graph import Multigraph
from logpic.harness import generators
from logpic.logcurve import LogCurve


class SweepConfig(msgspec.Struct, frozen=True, kw_only=True):
    """
    Args:
        seed (int): seed of every generated instance
        max_vertices (int): vertex bound of generated / enumerated graphs
        max_edges (int): edge bound of generated / enumerated graphs
        max_group_order (int): largest genus-1 group order
        degree_lo (int): lower end of the degree window
        degree_hi (int | None): upper end, ``2g + 2`` per instance when None
        instances (int): number of generated instances
        torus_orders (Tuple[int, ...]): torus models for kernel checks
        exhaustive (bool): enumerate all graphs instead of sampling
        rational (bool): only generate rational components
        jobs (int): worker count, 1 runs inline
    """
    seed: int = 0
    max_vertices: int = 3
    max_edges: int = 4
    max_group_order: int = 5
    degree_lo: int = -2
    degree_hi: int | None = None
    instances: int = 20
    torus_orders: tuple[int, ...] = (1, 2, 3)
    exhaustive: bool = False
    rational: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_edges < 0 or self.instances < 0:
            raise InputError('sweep bounds must be positive')
        if self.max_group_order < 1:
            raise InputError('max_group_order must be positive')
        if self.degree_hi is not None and self.degree_lo > self.degree_hi:
            raise InputError(
                f'degree window is empty: [{self.degree_lo}, {self.degree_hi}]')
        if any(m < 1 for m in self.torus_orders):
            raise InputError('torus orders must be >= 1')

    def degrees(self, genus: int) -> range:
        hi = 2 * genus + 2 if self.degree_hi is None else self.degree_hi
        return range(self.degree_lo, hi + 1)


class Violation(msgspec.Struct, frozen=True):
    """A failed identity together with everything needed to reproduce it."""
    identity: str
    instance: dict
    detail: dict
    size: tuple[int, ...] = ()


class SweepReport(msgspec.Struct, kw_only=True):
    name: str
    checked: int = 0
    violations: list[Violation] = msgspec.field(default_factory=list)
    witnesses: list[dict] = msgspec.field(default_factory=list)
    skipped: int = 0
    counters: dict[str, int] = msgspec.field(default_factory=dict)
    config: dict = msgspec.field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def minimal(self) -> dict | None:
        """The smallest violation by instance size, then degree."""
        if not self.violations:
            return None
        best = min(self.violations, key=lambda v: v.size)
        return {'identity': best.identity, 'instance': best.instance, 'detail': best.detail}

    def merge(self, other: SweepReport) -> None:
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.witnesses.extend(other.witnesses)
        self.skipped += other.skipped
        for k, v in other.counters.items():
            self.counters[k] = self.counters.get(k, 0) + v

    def count(self, key: str, n: int = 1) -> None:
        self.counters[key] = self.counters.get(key, 0) + n

    def __json__(self) -> dict:
        from logpic.utils.util_msgspec import asdict
        return {
            'name': self.name,
            'checked': self.checked,
            'ok': self.ok,
            'violations': [asdict(v) for v in self.violations],
            'minimal': self.minimal,
            'witnesses': self.witnesses,
            'skipped': self.skipped,
            'counters': dict(sorted(self.counters.items())),
            'config': self.config,
        }


def _size(obj, degree: int = 0) -> tuple[int, ...]:
    if isinstance(obj, Multigraph):
        G = obj
    elif isinstance(obj, MetrizedComplex):
        G = obj.graph
    else:
        G = obj.dual_graph()
    return (len(G.vertices) + len(G.edges), abs(degree))


def _violation(report: SweepReport, identity: str, obj, detail: dict) -> None:
    v = Violation(identity, obj.__json__(), detail, _size(obj, detail.get('degree', 0)))
    report.violations.append(v)
    logger.warning('{} violated: {}', identity, detail)


def _run(name: str, cfg: SweepConfig, check: Callable, instances: Sequence) -> SweepReport:
    """Apply ``check(cfg, index, instance) -> SweepReport`` and merge in order."""
    from logpic.utils.util_msgspec import asdict
    logger.info('Starting sweep {} over {} instances', name, len(instances))
    start = time.perf_counter()
    items = list(enumerate(instances))
    if cfg.jobs == 1:
        parts = [check(cfg, idx, obj) for idx, obj in items]
    else:
        from joblib import Parallel, delayed
        parts = Parallel(n_jobs=cfg.jobs)(delayed(check)(cfg, idx, obj) for idx, obj in items)
    report = SweepReport(name=name, config=asdict(cfg))
    for part in parts:
        report.merge(part)
    report.elapsed = time.perf_counter() - start
    if report.ok:
        logger.success('Sweep {} checked {} cases with no violations', name, report.checked)
    else:
        logger.warning('Sweep {} found {} violations in {} cases',
                       name, len(report.violations), report.checked)
    return report


def default_graphs(cfg: SweepConfig) -> list[Multigraph]:
    if cfg.exhaustive:
        return generators.enumerate_graphs(cfg.max_vertices, cfg.max_edges)
    return [generators.gen_graph(cfg, i) for i in range(cfg.instances)]


def default_complexes(cfg: SweepConfig) -> list[MetrizedComplex]:
    if cfg.exhaustive:
        return [MetrizedComplex.rational(G) for G in default_graphs(cfg)]
    return [generators.gen_complex(cfg, i, rational=cfg.rational) for i in range(cfg.instances)]


def default_curves(cfg: SweepConfig) -> list[LogCurve]:
    return [LogCurve.from_complex(C) for C in default_complexes(cfg)]


# --- graph Riemann-Roch ---

def _check_rr_graph(cfg: SweepConfig, idx: int, G: Multigraph, rank: str = 'ac') -> SweepReport:
    report = SweepReport(name='rr-graph')
    for d in cfg.degrees(G.genus):
        # Riemann-Roch is a class function, so one reduced divisor per class suffices
        for D in reduced_divisors(G, d):
            report.checked += 1
            defect = D.rr_defect(rank=rank)
            if defect:
                _violation(report, 'r(D) - r(K - D) = deg(D) - g + 1', G, {
                    'index': idx, 'degree': d, 'divisor': D.to_dict(),
                    'rank': rank, 'defect': defect})
    return report


def _check_rr_graph_bn(cfg, idx, G):
    return _check_rr_graph(cfg, idx, G, rank='bn')


def sweep_rr_graph(cfg: SweepConfig, graphs: Iterable[Multigraph] | None = None,
                   rank: str = 'ac') -> SweepReport:
    """
    Graph Riemann-Roch for every divisor class in the degree window.
    ``rank='bn'`` is the loop-blind negative control.
    """
    graphs = default_graphs(cfg) if graphs is None else list(graphs)
    check = _check_rr_graph if rank == 'ac' else _check_rr_graph_bn
    return _run(f'rr-graph[{rank}]', cfg, check, graphs)


# --- complex and curve Riemann-Roch ---

def _check_rr_complex(cfg: SweepConfig, idx: int, C: MetrizedComplex) -> SweepReport:
    report = SweepReport(name='rr-complex')
    try:
        C.require_exact()
        C.require_unmarked()
    except UnsupportedModelError:
        report.skipped += 1
        return report
    g = C.genus
    K = C.canonical_class()
    for d in cfg.degrees(g):
        for c in C.classes_of_degree(d):
            report.checked += 1
            r = C.rank(c)
            r_dual = C.rank(C.sub(K, c))
            if r - r_dual != d - g + 1:
                _violation(report, 'r(D) - r(K - D) = deg(D) - g + 1', C, {
                    'index': idx, 'degree': d, 'class': C.class_to_dict(c),
                    'rank': r, 'dual_rank': r_dual})
    return report


def sweep_rr_complex(cfg: SweepConfig, complexes: Iterable[MetrizedComplex] | None = None) -> SweepReport:
    """
    Example:
        >>> from logpic.harness.sweeps import *  # NOQA
        >>> cfg = SweepConfig(degree_lo=-2, degree_hi=4)
        >>> sweep_rr_complex(cfg, [MetrizedComplex.demo('CPX-ELL5')]).checked
        35
    """
    complexes = default_complexes(cfg) if complexes is None else list(complexes)
    return _run('rr-complex', cfg, _check_rr_complex, complexes)


def _check_rr_curve(cfg: SweepConfig, idx: int, X: LogCurve) -> SweepReport:
    report = SweepReport(name='rr-curve')
    try:
        X.require_rank_ready()
    except UnsupportedModelError:
        report.skipped += 1
        return report
    g = X.genus
    omega = X.omega_log()
    for d in cfg.degrees(g):
        for L in X.bundles_of_degree(d):
            report.checked += 1
            dual = omega.tensor(L.inverse())
            r, r_dual = L.comb_rank(), dual.comb_rank()
            if dual.degree() != 2 * g - 2 - d:
                _violation(report, 'deg(omega - L) = 2g - 2 - deg(L)', X, {
                    'index': idx, 'degree': d, 'bundle': L.__json__()})
            if r - r_dual != d - g + 1:
                _violation(report, 'r(L) - r(omega - L) = deg(L) - g + 1', X, {
                    'index': idx, 'degree': d, 'bundle': L.__json__(),
                    'rank': r, 'dual_rank': r_dual})
    return report


def sweep_rr_curve(cfg: SweepConfig, curves: Iterable[LogCurve] | None = None) -> SweepReport:
    """
    Example:
        >>> from logpic.harness.sweeps import *  # NOQA
        >>> sweep_rr_curve(SweepConfig(), [LogCurve.demo('X-NODALCUBIC')]).ok
        True
    """
    curves = default_curves(cfg) if curves is None else list(curves)
    return _run('rr-curve', cfg, _check_rr_curve, curves)


# --- specialization ---

def _check_specialization(cfg: SweepConfig, idx: int, X: LogCurve) -> SweepReport:
    report = SweepReport(name='specialization')
    try:
        X.require_rank_ready()
    except UnsupportedModelError:
        report.skipped += 1
        return report
    rational = X.is_maximally_degenerate()
    twisters = [X.twister(v) for v in X.component_ids]
    for d in cfg.degrees(X.genus):
        for L in X.bundles_of_degree(d):
            report.checked += 1
            r = L.comb_rank()
            r_graph = L.multidegree().rank_ac()
            detail = {'index': idx, 'degree': d, 'bundle': L.__json__(),
                      'rank': r, 'graph_rank': r_graph}
            if r > r_graph:
                _violation(report, 'r(L) <= r_G(tau(L))', X, detail)
            if rational and r != r_graph:
                _violation(report, 'r(L) = r_G(tau(L)) on rational curves', X, detail)
            tau = L.tau()
            for T in twisters:
                twisted = L.tensor(T)
                if twisted.tau() != tau or twisted.degree() != d:
                    _violation(report, 'tau and degree descend to the log Picard group', X, detail)
                    break
    return report


def sweep_specialization(cfg: SweepConfig, curves: Iterable[LogCurve] | None = None) -> SweepReport:
    curves = default_curves(cfg) if curves is None else list(curves)
    return _run('specialization', cfg, _check_specialization, curves)


# --- Clifford ---

def _check_clifford(cfg: SweepConfig, idx: int, X: LogCurve) -> SweepReport:
    report = SweepReport(name='clifford')
    try:
        X.require_rank_ready()
    except UnsupportedModelError:
        report.skipped += 1
        return report
    g = X.genus
    for d in range(0, 2 * g - 1):
        for L in X.bundles_of_degree(d):
            if not (L.has_comb_effective_rep() and L.is_special()):
                continue
            report.checked += 1
            r = L.comb_rank()
            if 2 * r > d:
                _violation(report, 'r(L) <= deg(L) / 2', X, {
                    'index': idx, 'degree': d, 'bundle': L.__json__(), 'rank': r})
            if d == 2 and r == 1:
                report.witnesses.append({'index': idx, 'degree': d, 'rank': r,
                                         'genus': g, 'bundle': L.__json__()})
    return report


def sweep_clifford(cfg: SweepConfig, curves: Iterable[LogCurve] | None = None) -> SweepReport:
    """
    Clifford's inequality on special classes, plus witnesses of degree 2
    and rank 1.

    Example:
        >>> from logpic.harness.sweeps import *  # NOQA
        >>> report = sweep_clifford(SweepConfig(), [LogCurve.demo('X-B3')])
        >>> report.ok, len(report.witnesses) > 0
        (True, True)
    """
    curves = default_curves(cfg) if curves is None else list(curves)
    return _run('clifford', cfg, _check_clifford, curves)


# --- short exact sequence ---

def _check_ses(cfg: SweepConfig, idx: int, X: LogCurve) -> SweepReport:
    report = SweepReport(name='ses')
    for m in cfg.torus_orders:
        try:
            quotient = X.quotient_kernel(m)
            pic = X.pic_kernel(m)
        except BoundExceededError:
            report.skipped += 1
            continue
        report.checked += 1
        report.count(f'order[m={m}]', quotient.order)
        if not quotient.ok:
            _violation(report, '|ker| = m^b1 for the log Picard quotient', X, {
                'index': idx, 'torus': m, 'order': quotient.order,
                'invariants': list(quotient.invariants), 'expected': quotient.expected})
        if pic.order != pic.expected:
            _violation(report, '|ker| = m^b1 for restriction to the normalization', X, {
                'index': idx, 'torus': m, 'order': pic.order, 'expected': pic.expected})
    return report


def sweep_ses(cfg: SweepConfig, curves: Iterable[LogCurve] | None = None) -> SweepReport:
    """
    Example:
        >>> from logpic.harness.sweeps import *  # NOQA
        >>> report = sweep_ses(SweepConfig(), [LogCurve.demo('X-B3')])
        >>> report.counters
        {'order[m=1]': 1, 'order[m=2]': 4, 'order[m=3]': 9}
    """
    curves = default_curves(cfg) if curves is None else list(curves)
    return _run('ses', cfg, _check_ses, curves)


# --- groupoid roundtrip ---

def _check_roundtrip(cfg: SweepConfig, idx: int, X: LogCurve) -> SweepReport:
    report = SweepReport(name='roundtrip')
    C = X.to_complex()
    report.checked += 1
    if not LogCurve.from_complex(C).isomorphic(X):
        _violation(report, 'from_complex(to_complex(X)) = X', X, {'index': idx})
    if not LogCurve.from_complex(C).to_complex().isomorphic(C):
        _violation(report, 'to_complex(from_complex(C)) = C', X, {'index': idx})
    try:
        auts = C.automorphisms()
    except BoundExceededError:
        report.skipped += 1
        return report
    report.count('automorphisms', len(auts))
    for phi in auts:
        problems = C.check_automorphism(phi)
        if problems:
            _violation(report, 'lifted automorphisms are automorphisms', X, {
                'index': idx, 'problems': problems})
            continue
        psi = LogCurve.from_complex_automorphism(phi)
        problems = X.check_automorphism(psi)
        if problems:
            _violation(report, 'transported automorphisms are automorphisms', X, {
                'index': idx, 'problems': problems})
            continue
        back = X.to_complex_automorphism(psi)
        if back is None or back.graph.key() != phi.graph.key():
            _violation(report, 'transport is inverse to transport', X, {'index': idx})
    return report


def default_roundtrip_curves(cfg: SweepConfig) -> list[LogCurve]:
    """Generated curves with markings and, for odd indices, lengths in N^2."""
    return [generators.gen_curve(cfg, i, marks=True, monoid_rank=1 + i % 2)
            for i in range(cfg.instances)]


def sweep_roundtrip(cfg: SweepConfig, curves: Iterable[LogCurve] | None = None) -> SweepReport:
    """
    Example:
        >>> from logpic.harness.sweeps import *  # NOQA
        >>> report = sweep_roundtrip(SweepConfig(), [LogCurve.demo('X-B2-N2')])
        >>> report.ok, report.counters
        (True, {'automorphisms': 2})
    """
    curves = default_roundtrip_curves(cfg) if curves is None else list(curves)
    return _run('roundtrip', cfg, _check_roundtrip, curves)


# --- smooth curves ---

def smooth_curves(cfg: SweepConfig) -> list[LogCurve]:
    """A rational curve and one elliptic curve per group order up to the bound."""
    models = [ComponentModel.rational(['x', 'y'])]
    models += [ComponentModel.elliptic([n]) for n in range(2, cfg.max_group_order + 1)]
    return [LogCurve({'v': m}, []) for m in models]


def _check_smooth(cfg: SweepConfig, idx: int, X: LogCurve) -> SweepReport:
    report = SweepReport(name='smooth')
    (model,) = X.models
    for d in cfg.degrees(model.genus):
        for c in model.classes(d):
            report.checked += 1
            L = X.bundle([c])
            r = L.comb_rank()
            if r != model.h0(c) - 1:
                _violation(report, 'r(L) = h0(L) - 1 on smooth curves', X, {
                    'index': idx, 'degree': d, 'bundle': L.__json__(), 'rank': r})
    return report


def sweep_smooth(cfg: SweepConfig, curves: Iterable[LogCurve] | None = None) -> SweepReport:
    """
    Example:
        >>> from logpic.harness.sweeps import *  # NOQA
        >>> sweep_smooth(SweepConfig(max_group_order=3)).ok
        True
    """
    curves = smooth_curves(cfg) if curves is None else list(curves)
    return _run('smooth', cfg, _check_smooth, curves)


# --- direct combinatorial rank ---

def _check_direct_rank(cfg: SweepConfig, idx: int, X: LogCurve) -> SweepReport:
    report = SweepReport(name='direct-rank')
    try:
        X.require_rank_ready()
    except UnsupportedModelError:
        report.skipped += 1
        return report
    for m in cfg.torus_orders:
        for d in cfg.degrees(X.genus):
            for L in X.bundles_of_degree(d, torus=m):
                try:
                    direct = L.comb_rank_direct()
                except BoundExceededError:
                    report.skipped += 1
                    continue
                report.checked += 1
                r = L.comb_rank()
                if direct != r:
                    _violation(report, 'direct rank = rank through the complex', X, {
                        'index': idx, 'degree': d, 'torus': m, 'bundle': L.__json__(),
                        'rank': r, 'direct_rank': direct})
    return report


def sweep_direct_rank(cfg: SweepConfig, curves: Iterable[LogCurve] | None = None) -> SweepReport:
    """
    Example:
        >>> from logpic.harness.sweeps import *  # NOQA
        >>> cfg = SweepConfig(degree_lo=-1, degree_hi=2, torus_orders=(2,))
        >>> sweep_direct_rank(cfg, [LogCurve.demo('X-B2')]).ok
        True
    """
    curves = default_curves(cfg) if curves is None else list(curves)
    return _run('direct-rank', cfg, _check_direct_rank, curves)


SWEEPS: dict[str, Callable] = {
    'rr-graph': sweep_rr_graph,
    'rr-complex': sweep_rr_complex,
    'rr-curve': sweep_rr_curve,
    'specialization': sweep_specialization,
    'clifford': sweep_clifford,
    'ses': sweep_ses,
    'roundtrip': sweep_roundtrip,
    'smooth': sweep_smooth,
    'direct-rank': sweep_direct_rank,
}
