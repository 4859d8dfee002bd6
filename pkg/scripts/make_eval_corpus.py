#!/usr/bin/env python3
"""Regenerate the shipped synthetic evaluation corpus under data/eval_corpus.

The corpus is deterministic: 30 sessions, 417 interactions, 331 satisfied,
failures split 75 (pattern construction) / 11 (hierarchy organization), and
the 3/1/13/9/4 rating histogram.  Responses come from replaying the shipped
pack, so every session transcript also replays clean.
"""

from pathlib import Path

from convagent.corpus import write_corpus
from convagent.pack import resolve_pack

REPO_ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    pack = resolve_pack("academic_regulation")
    out = write_corpus(pack.script_set, REPO_ROOT / "data" / "eval_corpus")
    files = sorted(p.name for p in out.iterdir())
    print(f"wrote {len(files)} files to {out}")


if __name__ == "__main__":
    main()
