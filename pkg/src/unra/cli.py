"""Command-line surface: train, query, eval, and synth subcommands.

Exit codes: 0 success, 1 runtime failure, 2 usage error.  With --threads 1
every subcommand writes byte-identical outputs given identical flags.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .errors import UnraError, ValidationError
from .evaluation import evaluate
from .model import export_text, load_model, save_model
from .netio import load_network, save_network, validate
from .query import most_similar
from .synth import SynthConfig, generate
from .trainer import TrainConfig, train
from .vocab import write_vocab_dump
from .walker import save_walks


def _fractions_arg(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad fractions list {text!r}") from None
    if not values or not all(0.0 < v < 1.0 for v in values):
        raise argparse.ArgumentTypeError("fractions must lie strictly between 0 and 1")
    return values


def _sources_arg(text: str) -> list:
    out: list = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part.isdigit():
            out.append(int(part))
        elif part in ("words", "labels"):
            out.append(part)
        else:
            raise argparse.ArgumentTypeError(
                f"bad source filter entry {part!r}: use source ids, words, labels"
            )
    if not out:
        raise argparse.ArgumentTypeError("empty source filter")
    return out


_FLAG_TO_FIELD = {
    "dim": "dimension",
    "window": "window",
    "epochs": "iterations",
    "alpha": "alpha",
    "lr": "initial_learning_rate",
    "min_lr": "min_learning_rate",
    "walks": "walks_per_node",
    "walk_length": "walk_length",
    "min_node_count": "min_node_count",
    "min_word_count": "min_word_count",
    "subsample": "subsample",
    "seed": "seed",
    "threads": "threads",
}


def _build_train_config(args, parser) -> TrainConfig:
    """Merge defaults, then the optional JSON config file, then explicit flags."""
    merged = {f.name: f.default for f in dataclasses.fields(TrainConfig)}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config file: {exc}")
        if not isinstance(file_cfg, dict):
            parser.error("config file must hold a JSON object")
        for key, value in file_cfg.items():
            if key not in merged:
                parser.error(f"unknown config key {key!r}")
            merged[key] = value
    for flag, name in _FLAG_TO_FIELD.items():
        value = getattr(args, flag)
        if value is not None:
            merged[name] = value
    if args.train_word_context:
        merged["train_word_context"] = True
    if args.no_structure:
        merged["use_structure"] = False
    if args.no_content:
        merged["use_content"] = False
    if args.no_labels:
        merged["use_labels"] = False
    config = TrainConfig(**merged)
    try:
        config.validate()
    except ValidationError as exc:
        parser.error(str(exc))
    return config


def cmd_train(args, parser) -> int:
    config = _build_train_config(args, parser)
    network = load_network(args.edges, args.docs, args.links, args.labels)
    lines: list[str] = []

    def emit(stats):
        line = stats.tsv_line()
        lines.append(line)
        print(line)

    result = train(network, config, progress=emit)
    save_model(result.model, args.out)
    if args.text_out:
        export_text(result.model, args.text_out)
    if args.objective_log:
        with open(args.objective_log, "w", encoding="utf-8") as fh:
            fh.write("epoch\tstructure_ll\tcontent_ll\tlabel_ll\n")
            fh.write("".join(line + "\n" for line in lines))
    if args.walks_out:
        save_walks(result.corpora, args.walks_out)
    if args.vocab_out:
        ordered = [result.vocabularies[k] for k in sorted(result.vocabularies)]
        write_vocab_dump(args.vocab_out, ordered, result.model.trees)
    print(f"saved {len(result.model)} vectors to {args.out}", file=sys.stderr)
    return 0


def cmd_query(args, parser) -> int:
    model = load_model(args.model)
    result = most_similar(
        model, args.input, top_k=args.topk, source_filter=args.sources
    )
    for line in result.tsv_lines():
        print(line)
    return 0


def cmd_eval(args, parser) -> int:
    model = load_model(args.model)
    network = load_network(args.edges, args.docs, args.links, args.labels)
    report = evaluate(
        model,
        network,
        fractions=args.fractions,
        repeats=args.repeats,
        seed=args.seed,
        vector_source=args.vector_source,
    )
    text = "\n".join(report.tsv_lines()) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_synth(args, parser) -> int:
    config = SynthConfig(
        communities=args.communities,
        papers=args.papers,
        authors=args.authors,
        overlap=args.overlap,
        words_per_doc=args.words_per_doc,
        pool_size=args.pool_size,
        intra_density=args.intra_density,
        inter_density=args.inter_density,
        min_authors_per_paper=args.min_authors,
        max_authors_per_paper=args.max_authors,
        label_fraction=args.label_fraction,
        seed=args.seed,
    )
    try:
        config.validate()
    except ValidationError as exc:
        parser.error(str(exc))
    network = generate(config)
    paths = save_network(network, args.out)
    report = validate(network)
    print(report.summary(), file=sys.stderr)
    for name in sorted(paths):
        print(f"wrote {paths[name]}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unra",
        description="Joint embedding of multi-source networks, documents, and labels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train an embedding from corpus files")
    p_train.add_argument("--edges", action="append", required=True, metavar="FILE",
                         help="edge list TSV for one source; repeat per source, order = source id")
    p_train.add_argument("--docs", required=True, help="document words TSV")
    p_train.add_argument("--links", required=True, help="document-to-node links TSV")
    p_train.add_argument("--labels", default=None, help="document labels TSV")
    p_train.add_argument("--out", required=True, help="output model file (binary)")
    p_train.add_argument("--text-out", default=None, help="also export vectors as text")
    p_train.add_argument("--config", default=None, help="JSON file of config fields")
    p_train.add_argument("--dim", type=int, default=None, help="embedding dimension (100)")
    p_train.add_argument("--window", type=int, default=None, help="context window (5)")
    p_train.add_argument("--epochs", type=int, default=None, help="training epochs (10)")
    p_train.add_argument("--alpha", type=float, default=None,
                         help="structure weight in [0,1]; content and labels get 1-alpha (0.8)")
    p_train.add_argument("--lr", type=float, default=None, help="initial learning rate (0.025)")
    p_train.add_argument("--min-lr", type=float, default=None,
                         help="final learning rate (0.0001)")
    p_train.add_argument("--walks", type=int, default=None, help="walks per node (10)")
    p_train.add_argument("--walk-length", type=int, default=None, help="walk length (40)")
    p_train.add_argument("--min-node-count", type=int, default=None,
                         help="minimum node frequency (1)")
    p_train.add_argument("--min-word-count", type=int, default=None,
                         help="minimum word frequency (5)")
    p_train.add_argument("--subsample", type=float, default=None,
                         help="frequent-word subsampling threshold, 0 disables (0)")
    p_train.add_argument("--train-word-context", action="store_true", default=None,
                         help="also train word vectors on word-window pairs")
    p_train.add_argument("--no-structure", action="store_true", default=None,
                         help="drop the walk term")
    p_train.add_argument("--no-content", action="store_true", default=None,
                         help="drop the node-to-word term")
    p_train.add_argument("--no-labels", action="store_true", default=None,
                         help="drop the label-to-word term")
    p_train.add_argument("--seed", type=int, default=None, help="random seed (1)")
    p_train.add_argument("--threads", type=int, default=None,
                         help="worker threads; >1 trades bit-reproducibility for speed (1)")
    p_train.add_argument("--objective-log", default=None,
                         help="write per-epoch objective TSV here")
    p_train.add_argument("--walks-out", default=None, help="dump walk corpus here")
    p_train.add_argument("--vocab-out", default=None,
                         help="dump token/frequency/code table here")
    p_train.set_defaults(func=cmd_train)

    p_query = sub.add_parser("query", help="rank tokens most similar to the inputs")
    p_query.add_argument("--model", required=True, help="model file (binary or text)")
    p_query.add_argument("--input", action="append", required=True,
                         help="query token like 1:a, w:word, or c:label; repeatable")
    p_query.add_argument("--topk", type=int, default=10, help="results to print (10)")
    p_query.add_argument("--sources", type=_sources_arg, default=None,
                         help="restrict to source ids and/or words,labels (e.g. 1,2,words)")
    p_query.set_defaults(func=cmd_query)

    p_eval = sub.add_parser("eval", help="classification evaluation of a trained model")
    p_eval.add_argument("--model", required=True, help="model file")
    p_eval.add_argument("--edges", action="append", required=True, metavar="FILE",
                        help="edge list TSV per source, as for train")
    p_eval.add_argument("--docs", required=True, help="document words TSV")
    p_eval.add_argument("--links", required=True, help="document-to-node links TSV")
    p_eval.add_argument("--labels", required=True, help="document labels TSV")
    p_eval.add_argument("--fractions", type=_fractions_arg,
                        default=[0.1, 0.2, 0.3, 0.4, 0.5],
                        help="comma-separated training fractions (0.1,0.2,0.3,0.4,0.5)")
    p_eval.add_argument("--repeats", type=int, default=20, help="splits per fraction (20)")
    p_eval.add_argument("--seed", type=int, default=1, help="random seed (1)")
    p_eval.add_argument("--vector-source", choices=("first", "mean"), default="first",
                        help="document vector: first linked node or mean of links")
    p_eval.add_argument("--out", default=None, help="also write the report here")
    p_eval.set_defaults(func=cmd_eval)

    p_synth = sub.add_parser("synth", help="generate a planted-partition test network")
    p_synth.add_argument("--out", required=True, help="output directory")
    p_synth.add_argument("--communities", type=int, default=2, help="community count (2)")
    p_synth.add_argument("--papers", type=int, default=100, help="total papers (100)")
    p_synth.add_argument("--authors", type=int, default=60, help="total authors (60)")
    p_synth.add_argument("--overlap", type=float, default=0.0,
                         help="shared fraction of each community word pool (0)")
    p_synth.add_argument("--words-per-doc", type=int, default=60,
                         help="words drawn per document (60)")
    p_synth.add_argument("--pool-size", type=int, default=40,
                         help="word pool size per community (40)")
    p_synth.add_argument("--intra-density", type=float, default=0.15,
                         help="edge probability within a community (0.15)")
    p_synth.add_argument("--inter-density", type=float, default=0.02,
                         help="edge probability between communities (0.02)")
    p_synth.add_argument("--min-authors", type=int, default=1,
                         help="minimum authors linked per paper (1)")
    p_synth.add_argument("--max-authors", type=int, default=3,
                         help="maximum authors linked per paper (3)")
    p_synth.add_argument("--label-fraction", type=float, default=1.0,
                         help="fraction of papers that get a label (1.0)")
    p_synth.add_argument("--seed", type=int, default=1, help="random seed (1)")
    p_synth.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except UnraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
