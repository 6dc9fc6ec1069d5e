"""HOMFLY-PT polynomials of oriented link diagrams.

Two algorithms: Kauffman's exponential skein-template expansion and a
dynamic program over a nice tree decomposition of the diagram's graph.
"""

from .diagram import (
    LinkDiagram,
    Sign,
    Slot,
    components,
    generate_braid_closure,
    parse_pd,
    splice,
    switch,
    untwist_and_strip,
    writhe,
)
from .fpt import dp_stats, homfly_fpt, run_fpt
from .kauffman import homfly_kauffman, run_kauffman
from .poly import BiLaurent, TriLaurent, expand_delta, render

__all__ = [
    "BiLaurent",
    "LinkDiagram",
    "Sign",
    "Slot",
    "TriLaurent",
    "components",
    "dp_stats",
    "expand_delta",
    "generate_braid_closure",
    "homfly_fpt",
    "homfly_kauffman",
    "parse_pd",
    "render",
    "run_fpt",
    "run_kauffman",
    "splice",
    "switch",
    "untwist_and_strip",
    "writhe",
]
