"""Contextualized knowledge repository store, closure engine and benchmarks.

A repository keeps a global context plus local contexts as RDF named graphs.
The engine translates the knowledge to deduction facts, saturates them under
one of four reasoning regimes and writes the inferences back as named
graphs; the generator and benchmark harness reproduce the scalability and
knowledge-propagation experiments over synthetic repositories.
"""

__version__ = "0.1.0"

from ckrbench.engine.closure import ClosureResult, check_entailment, compute_closure
from ckrbench.engine.rules import REGIME_IDS, Regime, instantiate_ruleset
from ckrbench.generator import GenParams, build_ts1, build_ts2, build_ts3, generate_ckr
from ckrbench.model.repository import CkrRepository, assemble_repository
from ckrbench.rdf.dataset import Dataset, Quad
from ckrbench.rdf.terms import Term, blank, iri, literal
from ckrbench.rdf.trig import load_dataset, load_path, write_dataset, write_path

__all__ = [
    "ClosureResult",
    "CkrRepository",
    "Dataset",
    "GenParams",
    "Quad",
    "REGIME_IDS",
    "Regime",
    "Term",
    "__version__",
    "assemble_repository",
    "blank",
    "build_ts1",
    "build_ts2",
    "build_ts3",
    "check_entailment",
    "compute_closure",
    "generate_ckr",
    "instantiate_ruleset",
    "iri",
    "literal",
    "load_dataset",
    "load_path",
    "write_dataset",
    "write_path",
]
