#!/usr/bin/env python3
"""Generate the bundled SARD-style mini corpus.

Eight vulnerability patterns, each with a flawed ("bad") and a guarded
("good") shape, instantiated with varied identifiers and constants so
held-out programs are fresh variants of trained ones. Mixed programs
carry both a flawed and a patched function in one file.

Run from the repo root; writes src/vulnslice/data/mini_corpus/ and its
manifest.json. Checked-in output is the source of truth; re-run only
to regenerate deliberately.
"""

from __future__ import annotations

import json
import os

OUT_DIR = os.path.join(
    os.path.dirname(__file__), "..", "src", "vulnslice", "data", "mini_corpus"
)


def build_templates():
    """Each template returns (lines, vulnerable_line_indexes) given names."""

    def strcpy_bad(v):
        return (
            [
                f"void {v['fn']}(char *{v['src']})",
                "{",
                f"    char {v['buf']}[{v['cap']}];",
                f"    strcpy({v['buf']}, {v['src']});",
                f"    printf(\"%s\\n\", {v['buf']});",
                "}",
            ],
            [4],
        )

    def strcpy_good(v):
        # the buffer lives inside the guard so every slice of it sees the check
        return (
            [
                f"void {v['fn']}(char *{v['src']})",
                "{",
                f"    if (strlen({v['src']}) < {v['cap']})",
                "    {",
                f"        char {v['buf']}[{v['cap']}];",
                f"        strncpy({v['buf']}, {v['src']}, {v['cap']});",
                f"        printf(\"%s\\n\", {v['buf']});",
                "    }",
                "}",
            ],
            [],
        )

    def memcpy_bad(v):
        return (
            [
                f"void {v['fn']}(char *{v['src']}, int {v['len']})",
                "{",
                f"    char {v['buf']}[{v['cap']}];",
                f"    memcpy({v['buf']}, {v['src']}, {v['len']});",
                f"    {v['buf']}[0] = 'k';",
                "}",
            ],
            [4],
        )

    def memcpy_good(v):
        return (
            [
                f"void {v['fn']}(char *{v['src']}, int {v['len']})",
                "{",
                f"    if ({v['len']} <= {v['cap']})",
                "    {",
                f"        char {v['buf']}[{v['cap']}];",
                f"        memcpy({v['buf']}, {v['src']}, {v['len']});",
                f"        {v['buf']}[0] = 'k';",
                "    }",
                "}",
            ],
            [],
        )

    def malloc_bad(v):
        return (
            [
                f"void {v['fn']}(int {v['len']})",
                "{",
                f"    char *{v['buf']} = malloc({v['len']});",
                f"    {v['buf']}[0] = 'm';",
                f"    use({v['buf']});",
                "}",
            ],
            [4],
        )

    def malloc_good(v):
        return (
            [
                f"void {v['fn']}(int {v['len']})",
                "{",
                f"    char *{v['buf']} = malloc({v['len']});",
                f"    if ({v['buf']} != NULL)",
                "    {",
                f"        {v['buf']}[0] = 'm';",
                f"        use({v['buf']});",
                "    }",
                "}",
            ],
            [],
        )

    def format_bad(v):
        return (
            [
                f"void {v['fn']}(char *{v['src']})",
                "{",
                f"    char *{v['buf']} = {v['src']};",
                f"    printf({v['buf']});",
                "}",
            ],
            [4],
        )

    def format_good(v):
        return (
            [
                f"void {v['fn']}(char *{v['src']})",
                "{",
                f"    char *{v['buf']} = {v['src']};",
                f"    printf(\"%s\", {v['buf']});",
                "}",
            ],
            [],
        )

    def alloc_arith_bad(v):
        return (
            [
                f"void {v['fn']}(int {v['len']})",
                "{",
                f"    int {v['size']};",
                f"    {v['size']} = {v['len']} * 4;",
                f"    char *{v['buf']} = malloc({v['size']});",
                f"    {v['buf']}[{v['len']}] = 'a';",
                "}",
            ],
            [6],
        )

    def alloc_arith_good(v):
        return (
            [
                f"void {v['fn']}(int {v['len']})",
                "{",
                f"    int {v['size']};",
                f"    if ({v['len']} < {v['cap']})",
                "    {",
                f"        {v['size']} = {v['len']} * 4;",
                f"        char *{v['buf']} = malloc({v['size']});",
                f"        {v['buf']}[0] = 'a';",
                "    }",
                "}",
            ],
            [],
        )

    def gets_bad(v):
        return (
            [
                f"void {v['fn']}(void)",
                "{",
                f"    char {v['buf']}[{v['cap']}];",
                f"    gets({v['buf']});",
                f"    puts({v['buf']});",
                "}",
            ],
            [4],
        )

    def gets_good(v):
        return (
            [
                f"void {v['fn']}(void)",
                "{",
                f"    char {v['buf']}[{v['cap']}];",
                f"    fgets({v['buf']}, {v['cap']}, stdin);",
                f"    puts({v['buf']});",
                "}",
            ],
            [],
        )

    def free_bad(v):
        return (
            [
                f"void {v['fn']}(char *{v['buf']})",
                "{",
                f"    free({v['buf']});",
                f"    {v['buf']}[0] = {v['buf']}[1];",
                "}",
            ],
            [4],
        )

    def free_good(v):
        return (
            [
                f"void {v['fn']}(char *{v['buf']})",
                "{",
                f"    free({v['buf']});",
                f"    {v['buf']} = NULL;",
                "}",
            ],
            [],
        )

    def sprintf_bad(v):
        return (
            [
                f"void {v['fn']}(char *{v['src']})",
                "{",
                f"    char {v['buf']}[{v['cap']}];",
                f"    sprintf({v['buf']}, \"%s\", {v['src']});",
                f"    use({v['buf']});",
                "}",
            ],
            [4],
        )

    def sprintf_good(v):
        return (
            [
                f"void {v['fn']}(char *{v['src']})",
                "{",
                f"    char {v['buf']}[{v['cap']}];",
                f"    snprintf({v['buf']}, {v['cap']}, \"%s\", {v['src']});",
                f"    use({v['buf']});",
                "}",
            ],
            [],
        )

    return {
        "strcpy": (strcpy_bad, strcpy_good),
        "memcpy": (memcpy_bad, memcpy_good),
        "malloc": (malloc_bad, malloc_good),
        "format": (format_bad, format_good),
        "allocarith": (alloc_arith_bad, alloc_arith_good),
        "gets": (gets_bad, gets_good),
        "free": (free_bad, free_good),
        "sprintf": (sprintf_bad, sprintf_good),
    }


NAME_SETS = [
    {"src": "input", "buf": "store", "len": "count", "size": "total"},
    {"src": "payload", "buf": "scratch", "len": "amount", "size": "bytes"},
    {"src": "message", "buf": "frame", "len": "width", "size": "room"},
    {"src": "request", "buf": "slot", "len": "extent", "size": "needed"},
    {"src": "record", "buf": "cell", "len": "span", "size": "quota"},
]

# Capacity constants are assigned by variant, identically for both
# classes of every pattern, so no constant ever correlates with a label:
# variant 0 -> 16, variant 1 -> 32, mixed programs -> 64.
VARIANT_CAPS = [16, 32]
MIXED_CAP = 64


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    templates = build_templates()
    programs = []

    def emit(name: str, lines: list[str], klass: str, vuln_lines: list[int]):
        path = os.path.join(OUT_DIR, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
        record = {"path": name, "class": klass}
        if vuln_lines:
            record["vulnerable_lines"] = sorted(vuln_lines)
        programs.append(record)

    # two pure-bad and two pure-good variants per pattern
    for pattern, (bad_fn, good_fn) in sorted(templates.items()):
        for variant in range(2):
            names = dict(NAME_SETS[variant])
            names["cap"] = VARIANT_CAPS[variant]
            names["fn"] = f"{pattern}_handler_{variant}"
            lines, vuln = bad_fn(names)
            emit(f"{pattern}_bad_{variant}.c", lines, "bad", vuln)
            names = dict(NAME_SETS[variant + 2])
            names["cap"] = VARIANT_CAPS[variant]
            names["fn"] = f"{pattern}_worker_{variant}"
            lines, vuln = good_fn(names)
            assert not vuln
            emit(f"{pattern}_good_{variant}.c", lines, "good", [])

    # one mixed program per pattern: flawed + patched function in one file,
    # giving each (pattern, class) a third instance
    for i, pattern in enumerate(sorted(templates)):
        bad_fn, good_fn = templates[pattern]
        names = dict(NAME_SETS[4])
        names["cap"] = MIXED_CAP
        names["fn"] = f"{pattern}_flawed"
        bad_lines, bad_vuln = bad_fn(names)
        names = dict(NAME_SETS[i % len(NAME_SETS)])
        names["cap"] = MIXED_CAP
        names["fn"] = f"{pattern}_patched"
        good_lines, _ = good_fn(names)
        lines = bad_lines + [""] + good_lines
        emit(f"{pattern}_mixed.c", lines, "mixed", bad_vuln)

    manifest = {"corpus_root": ".", "programs": programs}
    with open(os.path.join(OUT_DIR, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(programs)} programs to {os.path.normpath(OUT_DIR)}")


if __name__ == "__main__":
    main()
