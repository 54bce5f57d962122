"""
Verbs on metrized curve complexes.

Divisors are ``{vertex: {point: multiplicity}}`` documents; results report
classes as ``{vertex: {"degree", "torsion"}}``.

Example:
    >>> from logpic.cli.complex_cli import *  # NOQA
    >>> ComplexModalCLI.main(argv=['--help'], _noexit=True)
"""
from __future__ import annotations

import scriptconfig as scfg

from logpic.cli.common import (EXIT_OK, EXIT_VIOLATION, VerbConfig,
                               load_input, read_document, report_status,
                               sweep_config)


class _ComplexInput(VerbConfig):
    complex = scfg.Value(None, type=str, position=1, required=True,
                         help='complex JSON file or fixture name (e.g. CPX-ELL5)')

    def load_complex(self):
        return load_input('complex', self.complex)

    def load_class(self, C, key='divisor'):
        from logpic.schema import load_complex_divisor
        return load_complex_divisor(C, read_document(self[key]))


class ComplexRankConfig(_ComplexInput):
    """
    Rank of a divisor class. ``--naive_rank`` skips loop subdivision.
    """
    __epilog__ = """
    Examples:
      logpic complex rank CPX-ELL5 --divisor '{"v": {"p0": 1, "p1": 1}}'
      logpic complex rank CPX-LOOP-RAT --divisor '{"v": {"y": 1}}' --naive_rank
    """
    divisor = scfg.Value(None, type=str, required=True,
                         help='divisor file or inline JSON {vertex: {point: int}}')
    naive_rank = scfg.Value(False, isflag=True, help='rank without loop subdivision')

    def run(self):
        C = self.load_complex()
        c = self.load_class(C)
        r = C.rank_naive(c) if self.naive_rank else C.rank(c)
        return {'rank': r}, EXIT_OK


class ComplexEquivConfig(_ComplexInput):
    """Linear equivalence of two divisors on the complex."""
    divisor = scfg.Value(None, type=str, required=True, help='first divisor')
    other = scfg.Value(None, type=str, required=True, help='second divisor')

    def run(self):
        C = self.load_complex()
        c1 = self.load_class(C)
        c2 = self.load_class(C, 'other')
        return {'equivalent': C.is_equivalent(c1, c2)}, EXIT_OK


class ComplexCanonicalConfig(_ComplexInput):
    """The canonical class and, when one exists, a representative divisor."""

    def run(self):
        C = self.load_complex()
        K, rep = C.canonical()
        return {
            'class': C.class_to_dict(K),
            'degree': K.degree(),
            'divisor': None if rep is None else rep.parts,
        }, EXIT_OK


class ComplexRRCheckConfig(_ComplexInput):
    """
    Check Riemann-Roch for every class in the degree window. Pass negative
    windows with ``=``, e.g. ``--degree_window=-2..4``.
    """
    degree_window = scfg.Value(None, type=str, help='LO..HI, defaults to -2..2g+2')

    def run(self):
        from logpic.harness.sweeps import sweep_rr_complex
        report = sweep_rr_complex(sweep_config(self), [self.load_complex()])
        return report, report_status(report)


class ComplexRoundtripConfig(_ComplexInput):
    """
    Glue the complex into a log curve and back, and transport every
    automorphism across.
    """

    def run(self):
        from logpic.harness.sweeps import SweepConfig, sweep_roundtrip
        from logpic.logcurve import LogCurve
        C = self.load_complex()
        X = LogCurve.from_complex(C)
        report = sweep_roundtrip(SweepConfig(), [X])
        payload = report.__json__()
        payload['isomorphic'] = X.to_complex().isomorphic(C)
        if not payload['isomorphic']:
            return payload, EXIT_VIOLATION
        return payload, report_status(report)


class ComplexModalCLI(scfg.ModalCLI):
    """
    Divisor theory on metrized curve complexes.
    """


ComplexModalCLI.register(ComplexRankConfig, command='rank')
ComplexModalCLI.register(ComplexEquivConfig, command='equiv')
ComplexModalCLI.register(ComplexCanonicalConfig, command='canonical')
ComplexModalCLI.register(ComplexRRCheckConfig, command='rr-check')
ComplexModalCLI.register(ComplexRoundtripConfig, command='roundtrip')


__cli__ = ComplexModalCLI

if __name__ == '__main__':
    """
    CommandLine:
        python -m logpic.cli.complex_cli --help
    """
    __cli__.main()
