"""Deterministic generator for a full-size synthetic nomenclature release.

Builds a flat file with the shape and texture of a real release: thousands
of active entries with names, numbered reactions, cofactor alternatives,
wrapped comment blocks, and cross-reference lines, plus a sprinkling of
deleted and transferred entries. Everything derives from one RNG seed so
tests see byte-identical input on every run.
"""

from __future__ import annotations

import random

PREFIXES = [
    "Alcohol", "Aldehyde", "Glycerol", "D-xylose", "Sorbitol", "Lactate",
    "Malate", "Shikimate", "Glucose", "Mannitol", "Pantoate", "Histidinol",
    "Carnitine", "Quinate", "Arogenate", "Indolelactate", "Octanol",
    "Cyclohexanol", "Butanediol", "Propanediol", "L-gulonate", "α-ketoacid",
    "β-alanine", "Homoserine", "Glyoxylate", "Tartronate", "Prephenate",
]
CORES = [
    "dehydrogenase", "reductase", "oxidase", "isomerase", "kinase",
    "transferase", "hydrolase", "lyase", "synthase", "mutase", "epimerase",
    "carboxylase", "aminotransferase", "phosphatase",
]
QUALIFIERS = [
    "(NADP(+))", "(NAD(+))", "[NAD(P)H]", "(quinone)", "(cytochrome c)",
    "(acceptor)", "(R-specific)", "(S-specific)", "(Si-specific)",
    "(Re-specific)", "(ambiguous)", "(FAD-dependent)",
]
SUBSTRATES = [
    "a primary alcohol", "a secondary alcohol", "D-xylose", "L-arabinose",
    "glycerol", "an aldehyde", "a ketone", "NAD(+)", "NADH", "NADP(+)",
    "NADPH", "H2O", "ATP", "ADP", "phosphate", "acetyl-CoA", "CoA",
    "2-oxoglutarate", "L-glutamate", "pyruvate", "oxaloacetate",
    "D-glucose 6-phosphate", "5'-AMP", "an N-acyl-amino acid",
]
COFACTORS = [
    "Zn(2+)", "Mg(2+)", "Mn(2+)", "Fe(3+)", "FAD", "FMN",
    "Pyridoxal 5'-phosphate", "Heme", "Cobalamin", "Thiamine diphosphate",
]
COMMENT_BITS = [
    "Acts on primary or secondary alcohols with very broad specificity",
    "Requires a divalent cation for full activity",
    "The enzyme from yeast is highly specific for its natural substrate",
    "Involved in the degradation pathway of aromatic compounds",
    "Formed by proteolytic cleavage of a larger precursor",
    "The reaction proceeds via a covalent enzyme-substrate intermediate",
    "Strongly inhibited by substrate analogues at high concentration",
    "Also oxidizes the corresponding D-isomer at a much lower rate",
    "A member of a family of membrane-bound flavoproteins",
    "Isolated originally from rabbit liver & skeletal muscle",
]
ORGS = ["HUMAN", "MOUSE", "RAT", "YEAST", "ECOLI", "BOVIN", "PONAB", "DANRE", "RABIT", "MACMU"]


def _wrap(code: str, text: str, width: int = 73) -> list[str]:
    # keep intermediate chunks period-free at the end so value joining stays safe
    words = text.split(" ")
    lines: list[str] = []
    current = ""
    for word in words:
        if current and len(current) + 1 + len(word) > width:
            lines.append(current)
            current = word
        else:
            current = f"{current} {word}" if current else word
    if current:
        lines.append(current)
    for chunk in lines[:-1]:
        if chunk.endswith("."):
            return [f"{code}   {text}"]  # wrapping would corrupt joining; emit whole
    return [f"{code}   {chunk}" for chunk in lines]


def generate_release(n: int = 8000, seed: int = 20260821) -> str:
    rng = random.Random(seed)
    lines: list[str] = [
        "CC   -----------------------------------------------------------------------",
        "CC   Synthetic nomenclature release for testing",
        f"CC   {n} entries, seed {seed}",
        "CC   -----------------------------------------------------------------------",
    ]
    serials: dict[tuple[int, int, int], int] = {}
    emitted: list[str] = []

    def next_ec() -> str:
        key = (rng.randint(1, 7), rng.randint(1, 23), rng.randint(1, 9))
        serials[key] = serials.get(key, 0) + 1
        serial = serials[key]
        prefix = "n" if rng.random() < 0.02 else ""
        return f"{key[0]}.{key[1]}.{key[2]}.{prefix}{serial}"

    def make_name() -> str:
        name = f"{rng.choice(PREFIXES)} {rng.choice(CORES)}"
        if rng.random() < 0.45:
            name += f" {rng.choice(QUALIFIERS)}"
        return name

    def make_activity() -> str:
        a, b, c, d = (rng.choice(SUBSTRATES) for _ in range(4))
        return f"{a} + {b} = {c} + {d}"

    for _ in range(n):
        ec = next_ec()
        roll = rng.random()
        if roll < 0.03:
            lines += [f"ID   {ec}", "DE   Deleted entry.", "//"]
            continue
        if roll < 0.07 and emitted:
            targets = rng.sample(emitted, k=min(len(emitted), rng.randint(1, 2)))
            lines.append(f"ID   {ec}")
            lines += _wrap("DE", "Transferred entry: " + " and ".join(targets) + ".")
            lines.append("//")
            continue

        lines.append(f"ID   {ec}")
        name = make_name()
        lines += _wrap("DE", name + ".")
        alts: set[str] = set()
        for _ in range(rng.randint(0, 3)):
            alt = make_name()
            if alt != name:
                alts.add(alt)
        for alt in sorted(alts):
            lines += _wrap("AN", alt + ".")
        n_acts = rng.randint(0, 2)
        if n_acts == 1:
            lines += _wrap("CA", make_activity() + ".")
        elif n_acts == 2:
            first, second = make_activity(), make_activity()
            if first != second:
                lines += _wrap("CA", f"(1) {first}. (2) {second}.")
            else:
                lines += _wrap("CA", first + ".")
        if rng.random() < 0.3:
            pair = rng.sample(COFACTORS, k=2)
            joiner = " or " if rng.random() < 0.5 else "; "
            lines += _wrap("CF", joiner.join(pair) + ".")
        elif rng.random() < 0.2:
            lines += _wrap("CF", rng.choice(COFACTORS) + ".")
        seen_comments: set[str] = set()
        for _ in range(rng.randint(0, 2)):
            comment = rng.choice(COMMENT_BITS)
            extra = rng.choice(COMMENT_BITS)
            if extra != comment:
                comment = f"{comment}; {extra.lower()}"
            if comment in seen_comments:
                continue
            seen_comments.add(comment)
            wrapped = _wrap("CC", "-!- " + comment + ".")
            # continuation lines of a comment block are indented under the marker
            lines.append(wrapped[0])
            lines += [f"CC       {w[5:]}" for w in wrapped[1:]]
        if rng.random() < 0.25:
            lines.append(f"PR   PROSITE; PDOC{rng.randint(10000, 99999)};")
        n_refs = rng.randint(0, 4)
        if n_refs:
            items = []
            seen_acc: set[str] = set()
            for _ in range(n_refs):
                acc = f"P{rng.randint(10000, 99999)}"
                if acc in seen_acc:
                    continue
                seen_acc.add(acc)
                items.append(f"{acc}, {rng.choice(PREFIXES)[:4].upper()}_{rng.choice(ORGS)}")
            for i in range(0, len(items), 3):
                lines.append("DR   " + " ;  ".join(items[i : i + 3]) + " ;")
        lines.append("//")
        emitted.append(ec)

    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    import sys

    sys.stdout.write(generate_release())
