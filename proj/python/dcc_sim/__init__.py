"""Deterministic simulator for a three-token co-governance crowdfunding protocol.

The heavy lifting lives in the C++ extension `_core`; this package re-exports
its surface: scenario runs, event-log replay and audit, report CSVs, the
pure-Nash/Pareto analyzer, and a scriptable `World` state machine.
"""

try:
    from dcc_sim._core import (  # type: ignore[attr-defined]
        DccError,
        Event,
        TokenKind,
        World,
        nash,
        op_names,
        replay,
        report,
        run,
        verify,
    )
except ImportError:  # in-tree builds put _core next to the package on sys.path
    from _core import (  # type: ignore[no-redef]
        DccError,
        Event,
        TokenKind,
        World,
        nash,
        op_names,
        replay,
        report,
        run,
        verify,
    )

__all__ = [
    "DccError",
    "Event",
    "TokenKind",
    "World",
    "nash",
    "op_names",
    "replay",
    "report",
    "run",
    "verify",
]
