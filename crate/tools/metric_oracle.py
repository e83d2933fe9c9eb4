#!/usr/bin/env python3
"""Independent retrieval-metric oracle.

Reads the ranked lists a sweep emitted (sweep_rankings.csv), the query file
and the gold set, and recomputes top-20 accuracy, MAP, precision@10 and
recall@10 per configuration from first principles.  Used to freeze the
golden metrics file that the acceptance suite compares the engine against.

Usage:
    metric_oracle.py RANKINGS_CSV QUERIES_JSONL GOLDSET_JSON > golden.csv
"""
import csv
import json
import sys
from collections import defaultdict

TOP_K = 20
PR_K = 10


def avp(ranked, relevant):
    hits = 0
    total = 0.0
    for rank, lesson in enumerate(ranked, start=1):
        if lesson in relevant:
            hits += 1
            total += hits / rank
    return total / len(relevant)


def main():
    rankings_path, queries_path, gold_path = sys.argv[1:4]

    with open(queries_path) as f:
        query_ids = [json.loads(line)["id"] for line in f if line.strip()]
    with open(gold_path) as f:
        gold = {q: set(ids) for q, ids in json.load(f).items()}

    ranked = defaultdict(lambda: defaultdict(list))  # config -> query -> [lesson]
    with open(rankings_path) as f:
        for row in csv.DictReader(f):
            entry = (int(row["rank"]), row["lesson_id"])
            ranked[row["config_id"]][row["query_id"]].append(entry)

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["config_id", "top20", "map", "p_at_10", "r_at_10"])
    for config_id in sorted(ranked):
        hits = 0
        avps = []
        precisions = []
        recalls = []
        for qid in query_ids:
            relevant = gold[qid]
            entries = sorted(ranked[config_id][qid])
            docs = [lesson for _, lesson in entries]
            hits += any(d in relevant for d in docs[:TOP_K])
            avps.append(avp(docs, relevant))
            found = sum(1 for d in docs[:PR_K] if d in relevant)
            precisions.append(found / PR_K)
            recalls.append(found / len(relevant))
        n = len(query_ids)
        out.writerow(
            [
                config_id,
                "%.12f" % (hits / n),
                "%.12f" % (sum(avps) / n),
                "%.12f" % (sum(precisions) / n),
                "%.12f" % (sum(recalls) / n),
            ]
        )


if __name__ == "__main__":
    main()
