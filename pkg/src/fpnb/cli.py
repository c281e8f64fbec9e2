"""Command line entry point: ``fpnb {train,classify,mine,matrix,inspect-tree}``.

Exit status: 0 success, 1 usage error, 2 data or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from fpnb import __version__
from fpnb.classify import classify_batch, format_classification
from fpnb.corpus import build_matrix
from fpnb.corpusfile import load_corpus, load_keyword_sets
from fpnb.fpgrowth import build_fp_tree, dump_tree, format_itemsets, mine_frequent_itemsets, read_transactions
from fpnb.nbmodel import load_model, save_model, train, training_report
from fpnb.preprocess import (
    PipelineConfig,
    Stemming,
    builtin_lexicon,
    builtin_stopwords,
    read_lexicon,
    read_wordlist,
)

logger = logging.getLogger("fpnb")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
BUILTIN = "builtin:"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _add_preprocess_flags(p: argparse.ArgumentParser, lexicon_default: str | None = None):
    g = p.add_argument_group("preprocessing (raw-format input only)")
    g.add_argument("--stopwords", default=BUILTIN + "stopwords",
                   help="stopword file, or 'builtin:stopwords' (default)")
    g.add_argument("--lexicon", default=lexicon_default,
                   help="keyword allow-list file, or 'builtin:train' / 'builtin:test'")
    g.add_argument("--stemming", choices=[s.value for s in Stemming], default=Stemming.OFF.value)
    g.add_argument("--no-singularize", dest="singularize", action="store_false")


def _pipeline(args) -> PipelineConfig:
    if args.stopwords == BUILTIN + "stopwords":
        stopwords = builtin_stopwords()
    else:
        stopwords = read_wordlist(args.stopwords)
    lexicon = None
    if args.lexicon:
        if args.lexicon.startswith(BUILTIN):
            lexicon = builtin_lexicon(args.lexicon[len(BUILTIN):])
        else:
            lexicon = read_lexicon(args.lexicon)
    return PipelineConfig(stopwords, lexicon, Stemming(args.stemming), args.singularize)


def _flags(cfg: PipelineConfig) -> dict[str, str]:
    return {"singularize": "on" if cfg.singularize else "off", "stemming": cfg.stemming.value}


def cmd_train(args) -> int:
    cfg = _pipeline(args)
    corpus = load_corpus(args.corpus, cfg)
    if len(corpus.classes) < 2:
        raise ValueError(f"need ≥ 2 classes, corpus has {len(corpus.classes)}")
    model = train(corpus, args.min_sup, preprocessing=_flags(cfg))
    save_model(model, args.model_out)
    sys.stdout.write(training_report(model).format())
    if args.figure:
        from fpnb.plotting import plot_likelihoods

        plot_likelihoods(model, args.figure)
    return EXIT_OK


def cmd_classify(args) -> int:
    model = load_model(args.model)
    cfg = _pipeline(args)
    recorded = dict(model.preprocessing)
    for key, value in _flags(cfg).items():
        if key in recorded and recorded[key] != value:
            logger.warning("model was trained with %s=%s but input uses %s=%s",
                           key, recorded[key], key, value)
    docs = load_keyword_sets(args.input, cfg)
    for result in classify_batch(docs, model):
        sys.stdout.write(format_classification(result) + "\n")
    return EXIT_OK


def cmd_mine(args) -> int:
    db = read_transactions(args.transactions)
    found = mine_frequent_itemsets(db, args.min_sup, args.min_size, single_path=args.single_path)
    sys.stdout.write(format_itemsets(found))
    return EXIT_OK


def cmd_matrix(args) -> int:
    docs = load_keyword_sets(args.corpus, _pipeline(args))
    order = None
    if args.term_order:
        with open(args.term_order, encoding="utf-8") as fh:
            order = [w.strip() for w in fh if w.strip() and not w.startswith("#")]
    sys.stdout.write(build_matrix(docs, term_order=order).to_tsv())
    return EXIT_OK


def cmd_inspect_tree(args) -> int:
    tree = build_fp_tree(read_transactions(args.transactions), args.min_sup)
    sys.stdout.write(dump_tree(tree) + "\n")
    if args.figure:
        from fpnb.plotting import plot_fp_tree

        plot_fp_tree(tree, args.figure, title=Path(args.transactions).stem)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpnb", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="train a model from a labeled corpus file")
    p.add_argument("corpus", type=Path)
    p.add_argument("--min-sup", type=_positive_int, required=True)
    p.add_argument("--model-out", "-o", type=Path, required=True)
    p.add_argument("--figure", type=Path, help="also write a likelihood bar chart here")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="classify documents with a trained model")
    p.add_argument("model", type=Path)
    p.add_argument("input", type=Path)
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mine", help="mine frequent itemsets from a transaction file")
    p.add_argument("transactions", type=Path)
    p.add_argument("--min-sup", type=_positive_int, required=True)
    p.add_argument("--min-size", type=_non_negative_int, default=1)
    p.add_argument("--no-single-path", dest="single_path", action="store_false",
                   help="disable the single-prefix-path shortcut")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("matrix", help="print the binary term-document matrix")
    p.add_argument("corpus", type=Path)
    p.add_argument("--term-order", type=Path, help="file listing the row order, one term per line")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("inspect-tree", help="print (and optionally draw) the FP-tree")
    p.add_argument("transactions", type=Path)
    p.add_argument("--min-sup", type=_positive_int, required=True)
    p.add_argument("--figure", type=Path, help="also draw the tree to this image file")
    p.set_defaults(func=cmd_inspect_tree)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"fpnb {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
