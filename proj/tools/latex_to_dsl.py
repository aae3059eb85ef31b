#!/usr/bin/env python3
"""Convert the LaTeX list of determining equations into golden/appendix_a.json.

Usage: latex_to_dsl.py SOURCE.md [--start LINE] [--end LINE] [-o OUT]

Each display block ($$ ... $$, multline*, equation*) holding one "... = 0"
equation becomes one DSL string. The converter only rewrites notation; it does
not simplify or reorder terms.
"""

import argparse
import json
import os
import re
import sys

FUNCS = {"f", "g", "h", "r"}


def blocks(lines):
    """Yield (first_line_number, text) for every display block."""
    buf, start, inside, closer = [], 0, False, None
    for no, raw in lines:
        s = raw.strip()
        if not inside:
            if s == "$$":
                inside, closer, buf, start = True, "$$", [], no
            elif s.startswith("\\begin{multline*}") or s.startswith("\\begin{equation*}"):
                inside, buf, start = True, [], no
                closer = "\\end{multline*}" if "multline" in s else "\\end{equation*}"
            continue
        if s.startswith(closer):
            inside = False
            text = " ".join(buf)
            if "=" in text:
                yield start, text
            continue
        if s.startswith("\\begin{split}") or s.startswith("\\end{split}"):
            continue
        buf.append(s)


def frac(s):
    pat = re.compile(r"\\frac\{([^{}]*)\}\{([^{}]*)\}")
    while True:
        n = pat.sub(r"((\1)/(\2))", s)
        if n == s:
            return s
        s = n


def latex_to_dsl(text):
    s = text
    s = s.replace("\\\\", " ").replace("&", " ")
    s = s.replace("\\left.", "").replace("\\right.", "")
    s = s.replace("\\left(", "(").replace("\\right)", ")")
    s = s.replace("\\left[", "(").replace("\\right]", ")")
    s = frac(s)
    s = re.sub(r"\\xi\s*\^\s*\{?(\d)\}?\s*\{\}\s*_\{(\w+)\}", r" xi\1_\2 ", s)
    s = re.sub(r"\\xi\s*\^\s*\{?(\d)\}?", r" xi\1 ", s)
    s = re.sub(r"\\eta\s*\{?\}?\s*_\{(\w+)\}", r" eta_\1 ", s)
    s = re.sub(r"\\eta\s*\(x,y,t,u\)", " eta ", s)
    s = re.sub(r"\\eta\b", " eta ", s)

    def primes(m):
        return m.group(1) + "'" * m.group(2).count("\\prime")

    s = re.sub(r"\b([fghr])\s*\^\{((?:\\prime\s*)+)\}", primes, s)
    s = re.sub(r"\b([fghr])('+)(?!\s*\()", r"\1\2(u)", s)
    s = re.sub(r"\b([fghr])\b(?!\s*[('])", r"\1(u)", s)
    s = s.replace("{", "(").replace("}", ")")
    s = s.strip().rstrip(",.; ")
    if "=" not in s:
        raise ValueError("no equation sign")
    lhs, rhs = s.split("=", 1)
    rhs = rhs.strip().rstrip(",.; ")
    expr = lhs if rhs in ("0", "") else "%s - (%s)" % (lhs, rhs)
    return insert_products(expr)


TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*'*|\^|[-+*/()])")


def insert_products(expr):
    out, pos, prev = [], 0, None
    while pos < len(expr):
        if expr[pos:].strip() == "":
            break
        m = TOKEN.match(expr, pos)
        if not m:
            raise ValueError("cannot tokenize near %r" % expr[pos:pos + 20])
        tok = m.group(1)
        pos = m.end()
        operand = tok[0].isalnum() or tok[0] == "_"
        if prev is not None and (operand or tok == "(") and (prev == ")" or prev[0].isalnum() or prev[0] == "_"):
            # a function call keeps its argument list attached
            if not (tok == "(" and prev[0].isalpha() and prev.rstrip("'") in FUNCS):
                if not (prev == "^"):
                    out.append("*")
        out.append(tok)
        prev = tok
    return " ".join(out).replace("( ", "(").replace(" )", ")")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source")
    ap.add_argument("--start", type=int, default=1)
    ap.add_argument("--end", type=int, default=10 ** 9)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()
    with open(args.source, encoding="utf-8") as fh:
        lines = [(i + 1, l) for i, l in enumerate(fh) if args.start <= i + 1 <= args.end]
    eqs = []
    for no, text in blocks(lines):
        try:
            dsl = latex_to_dsl(text)
        except ValueError as e:
            print("line %d: %s" % (no, e), file=sys.stderr)
            continue
        eqs.append({"index": len(eqs) + 1, "line": no, "latex": text, "equation": dsl})
    doc = {"schema": 1, "count": len(eqs), "equations": eqs}
    # Hand-written annotations survive regeneration.
    if args.output != "-" and os.path.exists(args.output):
        with open(args.output, encoding="utf-8") as fh:
            old = json.load(fh)
        if "expected_mismatches" in old:
            doc["expected_mismatches"] = old["expected_mismatches"]
    text = json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
