"""Quantum image circuit compiler: NEQR preparation with ternary-tree ESOP minimization."""

from .circuit import (Circuit, EmitError, Gate, GateKind, LayoutMismatchError, QubitLayout,
                      decompose_multicontrol, emit_qasm, gate_stats, synthesize,
                      xgate_lowering)
from .esop import (EsopCover, MalformedCoverError, TernaryNode, TernaryTree, TreeStateError,
                   append_all, build_tree, merge_leaves, merge_trees, minimize, read_pla,
                   rotate, traverse, write_pla)
from .estimators import NeqrCompiler, TTLiteMinimizer
from .neqr import (ColorLineCover, ImageFormatError, NeqrImage, UnsupportedBitDepthError,
                   bitplane_cover, bitplane_covers, ideal_map, load_image)
from .pipeline import CompileResult, compile_image
from .report import RunReport, build_report, compression_ratio, report_emit
from .verify import (check_equivalence, classical_simulate, esop_eval, statevector_simulate,
                     verify_image)

__version__ = "0.1.0"

__all__ = [
    "Circuit", "ColorLineCover", "CompileResult", "EmitError", "EsopCover", "Gate", "GateKind",
    "ImageFormatError", "LayoutMismatchError", "MalformedCoverError", "NeqrCompiler",
    "NeqrImage", "QubitLayout", "RunReport", "TTLiteMinimizer", "TernaryNode", "TernaryTree",
    "TreeStateError", "UnsupportedBitDepthError", "append_all", "bitplane_cover",
    "bitplane_covers", "build_report", "build_tree", "check_equivalence", "classical_simulate",
    "compile_image", "compression_ratio", "decompose_multicontrol", "emit_qasm", "esop_eval",
    "gate_stats", "ideal_map", "load_image", "merge_leaves", "merge_trees", "minimize",
    "read_pla", "report_emit", "rotate", "statevector_simulate", "synthesize", "traverse",
    "verify_image", "write_pla", "xgate_lowering",
]
