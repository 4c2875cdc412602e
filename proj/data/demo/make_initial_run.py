#!/usr/bin/env python3
"""Regenerates run_initial.txt: for each topic, the candidate documents are
ordered by body length (longest first), mimicking a crude first-stage
retriever. Run from this directory after editing corpus.trec."""

import re
from pathlib import Path

HERE = Path(__file__).parent

CANDIDATES = {
    "q1": ["solar01", "solar02", "solar03", "solar04", "solar05", "solar06", "solar07",
           "solar08", "solar09", "solar10", "flood01", "flood03", "flood10", "wheat01",
           "wheat08", "wheat10", "transit03", "transit08", "transit10", "reef01"],
    "q2": ["flood01", "flood02", "flood03", "flood04", "flood05", "flood06", "flood07",
           "flood08", "flood09", "flood10", "solar02", "solar06", "solar08", "wheat02",
           "wheat07", "reef02", "reef06", "transit02", "transit05", "transit06"],
    "q3": ["reef01", "reef02", "reef03", "reef04", "reef05", "reef06", "reef07", "reef08",
           "reef09", "reef10", "solar03", "solar07", "solar09", "flood05", "flood07",
           "flood09", "wheat03", "wheat05", "transit04", "transit07"],
    "q4": ["transit01", "transit02", "transit03", "transit04", "transit05", "transit06",
           "transit07", "transit08", "transit09", "transit10", "solar01", "solar05",
           "solar10", "flood02", "flood06", "flood08", "wheat04", "wheat06", "reef04",
           "reef08"],
    "q5": ["wheat01", "wheat02", "wheat03", "wheat04", "wheat05", "wheat06", "wheat07",
           "wheat08", "wheat09", "wheat10", "solar04", "solar06", "solar09", "flood03",
           "flood04", "flood07", "reef03", "reef09", "transit01", "transit06"],
}


def body_lengths(corpus_path):
    text = corpus_path.read_text()
    lengths = {}
    for block in re.findall(r"<DOC>(.*?)</DOC>", text, re.S):
        docno = re.search(r"<DOCNO>\s*(\S+)\s*</DOCNO>", block).group(1)
        body = re.sub(r"<DOCNO>.*?</DOCNO>", " ", block, flags=re.S)
        body = re.sub(r"<[^>]+>", " ", body)
        lengths[docno] = len(" ".join(body.split()))
    return lengths


def main():
    lengths = body_lengths(HERE / "corpus.trec")
    lines = []
    for query in sorted(CANDIDATES):
        docs = CANDIDATES[query]
        docs = sorted(docs, key=lambda d: (-lengths[d], d))
        for rank, doc in enumerate(docs, start=1):
            lines.append(f"{query} Q0 {doc} {rank} {lengths[doc]}.000000 initial")
    (HERE / "run_initial.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} entries")


if __name__ == "__main__":
    main()
