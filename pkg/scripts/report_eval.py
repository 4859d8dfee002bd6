#!/usr/bin/env python3
"""Print the evaluation report for a transcript directory.

Usage: python scripts/report_eval.py [dir]   (default: data/eval_corpus)
"""

import json
import sys
from pathlib import Path

from convagent.metrics import compute_stats
from convagent.store import read_transcript

REPO_ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    corpus = Path(sys.argv[1]) if len(sys.argv) > 1 else REPO_ROOT / "data" / "eval_corpus"
    records = []
    for path in sorted(corpus.glob("*.jsonl")):
        records.extend(read_transcript(path))
    ratings = []
    ratings_path = corpus / "ratings.json"
    if ratings_path.exists():
        ratings = json.loads(ratings_path.read_text(encoding="utf-8"))
    stats = compute_stats(records, ratings)
    print(f"sessions:            {stats.sessions}")
    print(f"interactions:        {stats.interactions}")
    print(f"satisfied:           {stats.satisfied}")
    print(f"accuracy:            {stats.accuracy_percent}%")
    print(f"per-session average: {stats.avg_interactions_per_session:.3g} "
          f"(headline {stats.avg_interactions_headline})")
    print("failure breakdown:")
    for reason, count in stats.failure_breakdown.items():
        print(f"  {reason}: {count}")
    print("rating histogram:")
    for rating, count in stats.rating_histogram.items():
        print(f"  {rating}: {count}")


if __name__ == "__main__":
    main()
