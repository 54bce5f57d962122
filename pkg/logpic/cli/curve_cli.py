"""
Verbs on log curves and their line bundles over a finite torus model.

A bundle document is ``{"classes": {component: {"degree", "torsion"}},
"gluing": {node: int}}``; missing components carry the trivial class and
missing nodes carry gluing zero.

Example:
    >>> from logpic.cli.curve_cli import *  # NOQA
    >>> CurveModalCLI.main(argv=['--help'], _noexit=True)
"""
from __future__ import annotations

import scriptconfig as scfg
from loguru import logger

from logpic.cli.common import (EXIT_OK, EXIT_VIOLATION, VerbConfig,
                               load_input, read_document, report_status,
                               sweep_config)


class _CurveInput(VerbConfig):
    curve = scfg.Value(None, type=str, position=1, required=True,
                       help='curve JSON file or fixture name (e.g. X-B2)')
    torus = scfg.Value(1, type=int, help='order m of the finite torus model Z/m')

    def load_curve(self):
        return load_input('curve', self.curve)

    def load_bundle(self, X):
        from logpic.schema import load_bundle
        return load_bundle(X, read_document(self.bundle), self.torus)


class CurveRankConfig(_CurveInput):
    """
    Combinatorial rank of a bundle, through the metrized complex or, with
    ``--direct``, straight from the definition on the torus model.
    Only vertical semistable curves are accepted.
    """
    __epilog__ = """
    Examples:
      logpic curve rank X-B2 --bundle '{"classes": {"v1": {"degree": 1}, "v2": {"degree": 1}}}'
      logpic curve rank X-NODALCUBIC --torus 3 --direct --bundle '{"classes": {"v": {"degree": 1}}}'
    """
    bundle = scfg.Value(None, type=str, required=True, help='bundle file or inline JSON')
    direct = scfg.Value(False, isflag=True, help='enumerate test bundles on the torus model')

    def run(self):
        X = self.load_curve()
        L = self.load_bundle(X)
        r = L.comb_rank_direct() if self.direct else L.comb_rank()
        return {'rank': r}, EXIT_OK


class CurveTropicalizeConfig(_CurveInput):
    """The specialization ``tau(L)``: the reduced multidegree on the dual graph."""
    bundle = scfg.Value(None, type=str, required=True, help='bundle file or inline JSON')

    def run(self):
        X = self.load_curve()
        L = self.load_bundle(X)
        return {
            'degree': L.degree(),
            'multidegree': L.multidegree().to_dict(),
            'tau': L.tau().to_dict(),
        }, EXIT_OK


class CurveToComplexConfig(_CurveInput):
    """The metrized complex of the curve, as a complex document."""

    def run(self):
        return self.load_curve().to_complex().__json__(), EXIT_OK


class CurveRRCheckConfig(_CurveInput):
    """
    Check Riemann-Roch for every log class in the degree window. Pass
    negative windows with ``=``, e.g. ``--degree_window=-2..4``.
    """
    degree_window = scfg.Value(None, type=str, help='LO..HI, defaults to -2..2g+2')

    def run(self):
        from logpic.harness.sweeps import sweep_rr_curve
        report = sweep_rr_curve(sweep_config(self), [self.load_curve()])
        return report, report_status(report)


class CurveSESCheckConfig(_CurveInput):
    """
    Order of the kernel of the log Picard group onto complex classes,
    against ``m ** b1``.
    """

    def run(self):
        X = self.load_curve()
        kernel = X.quotient_kernel(self.torus)
        logger.info('invariant factors of the gluing cokernel: {}', kernel.invariants)
        payload = {'kernelOrder': kernel.order, 'expected': kernel.expected}
        return payload, (EXIT_OK if kernel.ok else EXIT_VIOLATION)


class CurveCliffordConfig(_CurveInput):
    """
    Clifford's inequality on every special class, with equality witnesses of
    degree 2 and rank 1.
    """

    def run(self):
        from logpic.harness.sweeps import sweep_clifford
        report = sweep_clifford(sweep_config(self), [self.load_curve()])
        return report, report_status(report)


class CurveRoundtripConfig(_CurveInput):
    """Pass the curve to its complex and back, transporting automorphisms."""

    def run(self):
        from logpic.harness.sweeps import sweep_roundtrip
        report = sweep_roundtrip(sweep_config(self), [self.load_curve()])
        return report, report_status(report)


class CurveSweepConfig(VerbConfig):
    """
    Run harness sweeps over seeded random curves (or exhaustively enumerated
    rational ones) and merge their reports.
    """
    __epilog__ = """
    Examples:
      logpic curve sweep --identity rr-curve --instances 200 --seed 1
      logpic curve sweep --identity all --exhaustive --max_vertices 3 --max_edges 5
      logpic curve sweep --identity ses --out report.json
    """
    identity = scfg.Value('all', type=str, choices=[
        'all', 'rr-graph', 'rr-complex', 'rr-curve', 'specialization',
        'clifford', 'ses', 'roundtrip', 'smooth', 'direct-rank'],
        help='which sweep to run')
    seed = scfg.Value(0, type=int, help='seed of the generated instances')
    instances = scfg.Value(20, type=int, help='number of generated instances')
    max_vertices = scfg.Value(3, type=int, help='vertex bound')
    max_edges = scfg.Value(4, type=int, help='edge bound')
    max_group_order = scfg.Value(5, type=int, help='largest genus-1 group order')
    degree_window = scfg.Value(None, type=str, help='LO..HI, defaults to -2..2g+2')
    torus = scfg.Value(None, type=int, help='single torus order, defaults to 1, 2 and 3')
    exhaustive = scfg.Value(False, isflag=True, help='enumerate graphs instead of sampling')
    rational = scfg.Value(False, isflag=True, help='only rational components')
    jobs = scfg.Value(1, type=int, help='joblib workers, 1 runs inline')

    def run(self):
        from logpic.harness.sweeps import SWEEPS
        from logpic.utils.util_msgspec import asdict
        cfg = sweep_config(self, exhaustive=bool(self.exhaustive),
                           rational=bool(self.rational))
        names = list(SWEEPS) if self.identity == 'all' else [self.identity]
        reports = {}
        for name in names:
            reports[name] = SWEEPS[name](cfg).__json__()
        violations = [v for r in reports.values() for v in r['violations']]
        payload = {
            'name': 'sweep',
            'checked': sum(r['checked'] for r in reports.values()),
            'skipped': sum(r['skipped'] for r in reports.values()),
            'violations': violations,
            'config': asdict(cfg),
            'sweeps': reports,
        }
        return payload, (EXIT_OK if not violations else EXIT_VIOLATION)


class CurveModalCLI(scfg.ModalCLI):
    """
    Log curves, log line bundles and the verification harness.
    """


CurveModalCLI.register(CurveRankConfig, command='rank')
CurveModalCLI.register(CurveTropicalizeConfig, command='tropicalize')
CurveModalCLI.register(CurveToComplexConfig, command='to-complex')
CurveModalCLI.register(CurveRRCheckConfig, command='rr-check')
CurveModalCLI.register(CurveSESCheckConfig, command='ses-check')
CurveModalCLI.register(CurveCliffordConfig, command='clifford')
CurveModalCLI.register(CurveRoundtripConfig, command='roundtrip')
CurveModalCLI.register(CurveSweepConfig, command='sweep')


__cli__ = CurveModalCLI

if __name__ == '__main__':
    """
    CommandLine:
        python -m logpic.cli.curve_cli --help
    """
    __cli__.main()
