"""Command line surface.

The parser lives in `attractr.cli.parser`; this package init stays import-light so
that `attractr.error` can depend on `attractr.cli.exit_codes`.
"""
from __future__ import annotations
