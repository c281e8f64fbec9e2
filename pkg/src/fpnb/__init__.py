"""Text classification with FP-growth word sets and an m-estimate Naive Bayes model."""

__version__ = "0.1.0"

from fpnb.classify import Classification, MatchResult, classify_batch, match_sets, score
from fpnb.corpus import Corpus, TermDocumentMatrix, build_matrix, idf, tf
from fpnb.fpgrowth import FPTree, FrequentItemset, build_fp_tree, dump_tree, mine_bruteforce, mine_frequent_itemsets
from fpnb.nbmodel import ClassModel, load_model, save_model, train
from fpnb.preprocess import KeywordSet, PipelineConfig, RawDocument, porter_stem, preprocess_document, singularize, tokenize

__all__ = [
    "Classification", "MatchResult", "classify_batch", "match_sets", "score",
    "Corpus", "TermDocumentMatrix", "build_matrix", "idf", "tf",
    "FPTree", "FrequentItemset", "build_fp_tree", "dump_tree", "mine_bruteforce", "mine_frequent_itemsets",
    "ClassModel", "load_model", "save_model", "train",
    "KeywordSet", "PipelineConfig", "RawDocument", "porter_stem", "preprocess_document", "singularize", "tokenize",
]
