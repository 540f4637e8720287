"""kgprobe: knowledge-graph probing of masked language models.

Cloze predictions become subject-relation-object triples via rule-based
extraction over dependency parses; triples become directed knowledge
graphs with Porter-stemmed node identity; graphs are compared by exact or
assignment-approximated edit distance and by Euclidean distance between
characteristic-function embeddings, with part-of-speech overprediction
diagnostics against a ground-truth graph.
"""

__version__ = "0.1.0"

from .conllu import ParsedSentence, Token, parse_conllu, subtree_span, write_conllu
from .corpus import (ClozeRecord, FilledSentence, PredictionSet, fill_mask,
                     gold_sentence, load_cloze, load_predictions)
from .diagnostics import (PosCounts, PosorReport, pos_counts, pos_frequencies,
                          posor, radar_values)
from .embedding import EmbeddingConfig, GraphEmbedding, embed_graph, euclidean
from .extract import (RuleConfig, Triple, extract_triples, load_rule_config,
                      normalize_phrase, read_triples, write_triples)
from .ged import (AssignmentProblem, CostModel, GedResult, UNIT_COSTS, aed,
                  build_assignment_problem, exact_ged, induced_cost,
                  solve_assignment)
from .graph import KnowledgeGraph, build_graph, read_graph, stem_phrase, write_graph
from .pipeline import RunManifest, RunReport, compare_all, run_extraction
from .porter import stem_word

__all__ = [
    "AssignmentProblem", "ClozeRecord", "CostModel", "EmbeddingConfig",
    "FilledSentence", "GedResult", "GraphEmbedding", "KnowledgeGraph",
    "ParsedSentence", "PosCounts", "PosorReport", "PredictionSet",
    "RuleConfig", "RunManifest", "RunReport", "Token", "Triple", "UNIT_COSTS",
    "aed", "build_assignment_problem", "build_graph", "compare_all",
    "embed_graph", "euclidean", "exact_ged", "extract_triples", "fill_mask",
    "gold_sentence", "induced_cost", "load_cloze", "load_predictions",
    "load_rule_config", "normalize_phrase", "parse_conllu", "pos_counts",
    "pos_frequencies", "posor", "radar_values", "read_graph", "read_triples",
    "run_extraction", "solve_assignment", "stem_phrase", "stem_word",
    "subtree_span", "write_conllu", "write_graph", "write_triples",
]
