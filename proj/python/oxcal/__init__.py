"""Behavioral OxRAM 1T1R crossbar simulator with three-stage row offset
calibration."""

try:
    from ._oxcal import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _oxcal import *  # noqa: F401,F403  (build-tree layout)
