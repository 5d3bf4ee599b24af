"""Command line front: headless runs, statistics, merge, convert, serve."""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from .gateway.session import (
    ReplayMismatchError,
    read_timeline,
    replay_entries,
    run_headless,
)
from .project import (
    compute_statistics,
    load_project,
    save_project,
    statistics_text,
    validate_project,
)
from .runtime.engine import start_program
from .runtime.framelog import format_frame_line
from .runtime.hashing import runtime_hash
from .tools import (
    MalformedSourceError,
    MergeConflictError,
    convert_scratch,
    merge_projects,
)

log = logging.getLogger("brickvm.cli")

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_MISMATCH = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brickvm",
        description="Run, inspect, merge, convert, and serve brick projects.")
    parser.add_argument("--log-level", default="warning",
                        choices=("debug", "info", "warning", "error"),
                        help="logging verbosity (env BRICKVM_LOG overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a project headless and log frames")
    run.add_argument("--project", required=True, help="project archive path")
    run.add_argument("--timeline", help="JSONL input timeline; with recorded "
                     "frame lines the run verifies their hashes")
    run.add_argument("--frames", type=int, default=None,
                     help="number of frames to run (default: timeline extent)")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", help="write the frame log here instead of stdout")

    stats = sub.add_parser("stats", help="print project code statistics")
    stats.add_argument("--project", required=True)

    merge = sub.add_parser("merge", help="merge two projects into one archive")
    merge.add_argument("a", help="base project archive")
    merge.add_argument("b", help="project whose novel parts are added")
    merge.add_argument("--out", required=True, help="merged archive path")

    convert = sub.add_parser("convert",
                             help="convert a Scratch 3 archive to a project")
    convert.add_argument("src", help="source .sb3 archive")
    convert.add_argument("--out", help="converted project archive path")

    serve = sub.add_parser("serve", help="serve a project to one player")
    serve.add_argument("--project", required=True)
    serve.add_argument("--bind", default="127.0.0.1:8765",
                       help="host:port to listen on")
    serve.add_argument("--seed", type=int, default=0)
    serve.add_argument("--out", help="record the session as a JSONL timeline")
    serve.add_argument("--player-dir",
                       help="serve these static files as the web player")
    return parser


def _configure_logging(flag_level: str) -> None:
    name = os.environ.get("BRICKVM_LOG", "").strip().lower() or flag_level
    level = getattr(logging, name.upper(), logging.WARNING)
    logging.basicConfig(level=level,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _load(path: str):
    try:
        project = load_project(path)
    except FileNotFoundError:
        raise SystemExit(_fail(f"{path}: no such file"))
    except Exception as exc:
        raise SystemExit(_fail(f"{path}: {exc}"))
    return project


def _cmd_run(args) -> int:
    project = _load(args.project)
    entries = []
    if args.timeline:
        try:
            entries = read_timeline(args.timeline)
        except (OSError, ValueError) as exc:
            return _fail(f"{args.timeline}: {exc}")

    recorded_frames = any(e.get("type") == "frame" for e in entries)
    try:
        if recorded_frames:
            results = replay_entries(project, entries, seed=args.seed)
        else:
            frames = args.frames
            if frames is None:
                frames = (max((int(e.get("step", 0)) for e in entries),
                              default=-1) + 1)
            results = run_headless(project, entries, frames, seed=args.seed)
    except ReplayMismatchError as exc:
        print(f"replay mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH

    if results:
        final_hash = results[-1].hash
    else:
        final_hash = runtime_hash(start_program(project, args.seed))
    lines = [format_frame_line(result) for result in results]
    lines.append(f"final={final_hash}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"final={final_hash}")
    else:
        sys.stdout.write(text)
    if recorded_frames:
        log.info("replayed %d frames, hashes match", len(results))
    return EXIT_OK


def _cmd_stats(args) -> int:
    project = _load(args.project)
    sys.stdout.write(statistics_text(compute_statistics(project)))
    return EXIT_OK


def _cmd_merge(args) -> int:
    base = _load(args.a)
    other = _load(args.b)
    try:
        outcome = merge_projects(base, other)
    except MergeConflictError as exc:
        return _fail(str(exc))
    save_project(outcome.project, args.out)
    sys.stdout.write(outcome.report_text())
    return EXIT_OK


def _cmd_convert(args) -> int:
    try:
        project, report = convert_scratch(args.src, name=Path(args.src).stem)
    except FileNotFoundError:
        return _fail(f"{args.src}: no such file")
    except MalformedSourceError as exc:
        return _fail(f"{args.src}: {exc}")
    validate_project(project)
    if args.out:
        save_project(project, args.out)
    sys.stdout.write(report.text())
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .gateway.server import GatewayServer

    project = _load(args.project)
    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        return _fail(f"--bind needs host:port, got {args.bind!r}")
    record = open(args.out, "w", encoding="utf-8") if args.out else None
    try:
        server = GatewayServer(project, host=host, port=int(port_text),
                               seed=args.seed, record=record,
                               player_dir=args.player_dir)
        server.start()
        # the resolved port is only known after start() when binding :0
        print(f"serving {server.http_url}  (stream {server.ws_url})",
              flush=True)
        server.wait()
    finally:
        if record is not None:
            record.close()
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "stats": _cmd_stats,
    "merge": _cmd_merge,
    "convert": _cmd_convert,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    _configure_logging(args.log_level)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
