"""Independent re-check of a certificate JSON file (stdlib only).

usage: verify_certificate.py CERT.json [WINDOW.txt]
Exits 0 when the words have length n, are pairwise distinct, number at least
claimed_bound, and (with a window) all occur in the window.
"""
import json
import sys


def check(record, content=None):
    n, words = record["n"], record["words"]
    problems = []
    if any(len(w) != n for w in words):
        problems.append("word of wrong length")
    if len(set(words)) != len(words):
        problems.append("repeated word")
    if record["claimed_bound"] > len(words):
        problems.append("claimed bound exceeds word count")
    if content is not None and any(w not in content for w in words):
        problems.append("word missing from window")
    return problems


if __name__ == "__main__":
    record = json.load(open(sys.argv[1]))
    content = open(sys.argv[2]).read().strip() if len(sys.argv) > 2 else None
    problems = check(record, content)
    print(json.dumps({"ok": not problems, "problems": problems}))
    sys.exit(1 if problems else 0)
