"""Command-line driver.

    recurrent-aft lfp KB [--filter F] [--legacy] [--format text|json]
    recurrent-aft trace KB ...
    recurrent-aft enumerate KB [--cap N] [--all]
    recurrent-aft check KB --T=a,b --P=a,b
    recurrent-aft selftest

Exit status is 0 on success, 1 when a computation gives up (no convergence,
input too large) and 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .aft import DEFAULT_ENUMERATION_CAP
from .errors import KbSyntaxError, NonConvergence, TooLarge
from .kb import KnowledgeBase
from .phi import PhiConfig, parse_filter
from .report import compute_check, compute_enumeration, compute_lfp
from .selftest import run_selftest
from .textio import parse_kb, print_report

EXIT_OK, EXIT_GAVE_UP, EXIT_BAD_INPUT = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    kb_path: str | None = None
    filter: str = "singletons"
    legacy: bool = False
    format: str = "text"
    cap: int = DEFAULT_ENUMERATION_CAP
    include_inconsistent: bool = False
    t: str | None = None
    p: str | None = None


class UsageError(Exception):
    pass


def _atom_list(kb: KnowledgeBase, text: str | None, flag: str) -> int:
    if text is None:
        raise UsageError(f"check needs {flag}")
    names = [n.strip() for n in text.split(",") if n.strip()]
    unknown = [n for n in names if n not in kb.lattice.index]
    if unknown:
        raise UsageError(f"{flag}: unknown atom(s) {', '.join(unknown)}; "
                         f"known: {', '.join(kb.ka_names)}")
    return kb.atoms(names)


def run(config: CliConfig) -> tuple[int, str]:
    """Execute one command; returns the exit status and the text to print."""
    if config.subcommand == "selftest":
        lines, failed = [], 0
        for o in run_selftest():
            failed += not o.ok
            lines.append(f"{'PASS' if o.ok else 'FAIL'} {o.name}: {o.detail}")
        lines.append(f"{len(lines) - failed} passed, {failed} failed")
        return (EXIT_GAVE_UP if failed else EXIT_OK), "\n".join(lines) + "\n"

    stage = "read"
    try:
        text = Path(config.kb_path).read_text(encoding="utf-8")
        stage = "parse"
        kb = parse_kb(text)
        stage = "options"
        cfg = PhiConfig(parse_filter(config.filter), config.legacy)
        if config.subcommand in ("lfp", "trace"):
            stage = "least fixpoint"
            result = compute_lfp(kb, cfg, inner=config.subcommand == "trace")
        elif config.subcommand == "enumerate":
            stage = "enumerate"
            result = compute_enumeration(kb, cfg, config.cap, not config.include_inconsistent)
        elif config.subcommand == "check":
            stage = "check"
            t = _atom_list(kb, config.t, "--T")
            p = _atom_list(kb, config.p, "--P")
            result = compute_check(kb, t, p, cfg)
        else:
            raise UsageError(f"unknown subcommand {config.subcommand!r}")
    except (OSError, KbSyntaxError, ValueError, UsageError) as e:
        return EXIT_BAD_INPUT, f"error [{stage}]: {e}\n"
    except (NonConvergence, TooLarge) as e:
        return EXIT_GAVE_UP, f"error [{stage}]: {e}\n"
    return EXIT_OK, print_report(result, config.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recurrent-aft",
        description="Stable fixpoints of the recurrent approximator for hybrid knowledge bases.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def kb_command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("kb", help="knowledge base file")
        p.add_argument("--filter", default="singletons",
                       help="none | empty | singletons | subsets:K | powerset (default: singletons)")
        p.add_argument("--legacy", action="store_true", help="baseline operator without lookahead")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    kb_command("lfp", "least stable fixpoint with its outer trace")
    kb_command("trace", "least stable fixpoint with inner iterations")
    e = kb_command("enumerate", "all stable fixpoints with model verdicts")
    e.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                   help="refuse knowledge bases with more rule atoms than this")
    e.add_argument("--all", dest="include_inconsistent", action="store_true",
                   help="also report fixpoints whose T is not within P")
    c = kb_command("check", "model verdict for one approximation")
    c.add_argument("--T", dest="t", metavar="ATOMS", help="comma-separated true atoms")
    c.add_argument("--P", dest="p", metavar="ATOMS", help="comma-separated possibly-true atoms")
    sub.add_parser("selftest", help="run the bundled regression corpus")
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    fields = {k: v for k, v in vars(ns).items() if v is not None}
    kb = fields.pop("kb", None)
    return CliConfig(kb_path=kb, **fields)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    code, out = run(config_from_args(ns))
    (sys.stdout if code == EXIT_OK else sys.stderr).write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
