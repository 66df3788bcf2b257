"""Writes gold.tsv and ledger.tsv for the fixture corpus.

Spans are given as (sentence number, substring); byte offsets are found by
searching the substring inside that sentence of the UTF-8 file.
"""
import pathlib

HERE = pathlib.Path(__file__).parent
DOCS = {"d01": range(1, 11), "d02": range(11, 21)}


def sentences():
    out = {}
    for doc, numbers in DOCS.items():
        raw = (HERE / "corpus" / f"{doc}.txt").read_bytes()
        offset = 0
        for n, line in zip(numbers, raw.split(b"\n")):
            out[n] = (doc, offset, line)
            offset += len(line) + 1
    return out


SENT = sentences()


def span(n, text, nth=0):
    doc, base, line = SENT[n]
    needle = text.encode("utf-8")
    pos = -1
    for _ in range(nth + 1):
        pos = line.index(needle, pos + 1)
    return doc, base + pos, base + pos + len(needle)


E1_PN = [(1, "embarras"), (2, "avis"), (3, "avis"), (4, "explication"),
         (5, "entretien"), (8, "débat"), (9, "débats"), (10, "promenade"),
         (11, "attention"), (12, "avis"), (13, "pêche"), (15, "répercussions"),
         (20, "bouleversement")]
E2_PN = [s for s in E1_PN if s[0] != 9] + [(14, "apparition"), (18, "crise")]
E1_SVC = [(1, "est dans l'embarras", "embarras"), (2, "donné son avis", "avis"),
          (5, "un entretien a été accordé", "entretien"),
          (15, "répercussions qu'aura", "répercussions")]
E2_SVC = [(2, "donné son avis", "avis"),
          (5, "un entretien a été accordé", "entretien"),
          (14, "a fait du chemin", "chemin")]

# Expected matches of the bundled grammars under the longest policy.
PN_MATCHES = [(1, "l'embarras"), (2, "son avis"), (3, "L'avis"),
              (4, "une nouvelle explication"), (5, "un entretien"),
              (6, "Les nouvelles"), (8, "Ce débat"), (10, "La promenade"),
              (11, "Sans attention"), (12, "(avis"), (13, "la pêche"),
              (15, "Les répercussions")]
SVC_MATCHES = [(2, "donné son avis"), (5, "un entretien a été accordé"),
               (6, "Les nouvelles données")]

COUNTS = [
    ("count", "pn_total", 12), ("count", "svc_total", 3),
    ("count", "pn_with_sv", 3), ("count", "pn_without_sv", 9),
    ("subcat", "NCA.pn", 5), ("subcat", "NCA.svc", 1),
    ("subcat", "NCF.pn", 3), ("subcat", "NCF.svc", 0),
    ("subcat", "CV.pn", 4), ("subcat", "CV.svc", 2),
    ("subcat", "all.pn", 12), ("subcat", "all.svc", 3),
]


def main():
    rows = []
    for annotator, pn, svc in (("E1", E1_PN, E1_SVC), ("E2", E2_PN, E2_SVC)):
        for n, head in pn:
            rows.append((*span(n, head), "PN", annotator, head))
        for n, text, head in svc:
            rows.append((*span(n, text), "SVC", annotator, head))
    rows.sort(key=lambda r: (r[4], r[3], r[0], r[1]))
    with open(HERE / "gold.tsv", "w", encoding="utf-8") as f:
        f.write("# doc_id\tstart_byte\tend_byte\tlabel\tannotator\thead_form\n")
        for r in rows:
            f.write("\t".join(map(str, r)) + "\n")

    with open(HERE / "ledger.tsv", "w", encoding="utf-8") as f:
        f.write("# kind\tkey\tvalue\n")
        for kind, key, value in COUNTS:
            f.write(f"{kind}\t{key}\t{value}\n")
        for label, matches in (("PN", PN_MATCHES), ("SVC", SVC_MATCHES)):
            for n, text in matches:
                doc, start, end = span(n, text)
                f.write(f"{label}\t{doc}:{start}:{end}\t{text}\n")


if __name__ == "__main__":
    main()
