"""Convert the LaTeX HPL tables of the reference text into the mplsym expression grammar."""

import json
import re
import sys

TOKEN = re.compile(
    r"\\text\{Li\}_\{(?P<lik>[0-9,]+)\}|\\text\{Li\}_(?P<li>[0-9])|\\zeta_3|\\frac|\\log|\\pi|\\left|\\right"
    r"|(?P<num>[0-9]+)|[x+\-^(){},]"
)


def tokenize(s):
    s = s.replace("\\,", " ").replace("\\\\", " ").replace("&", " ")
    out, pos = [], 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = TOKEN.match(s, pos)
        if not m:
            raise ValueError("unexpected input at: " + s[pos : pos + 30])
        t = m.group(0)
        if m.group("lik"):
            out.append(("Li", m.group("lik")))
        elif m.group("li"):
            out.append(("Li", m.group("li")))
        elif t not in ("\\left", "\\right"):
            out.append((t, None))
        pos = m.end()
    return out


class Parser:
    def __init__(self, toks):
        self.t, self.i = toks, 0

    def peek(self):
        return self.t[self.i][0] if self.i < len(self.t) else None

    def take(self, want=None):
        tok = self.t[self.i]
        if want and tok[0] != want:
            raise ValueError("expected %s got %s" % (want, tok[0]))
        self.i += 1
        return tok

    def expr(self):
        parts = []
        first = True
        while True:
            sign = "+"
            if self.peek() in ("+", "-"):
                sign = self.take()[0]
            elif not first:
                break
            term = self.term()
            parts.append((" - " if sign == "-" else " + ") if parts else ("-" if sign == "-" else ""))
            parts.append(term)
            first = False
            if self.peek() not in ("+", "-"):
                break
        return "".join(parts)

    def term(self):
        factors = [self.factor()]
        while self.peek() not in (None, "+", "-", ")", "}", ","):
            factors.append(self.factor())
        return "*".join(factors)

    def exponent(self):
        if self.peek() == "{":
            self.take("{")
            e = self.expr()
            self.take("}")
            return e
        return self.take("num")[0] if self.peek() == "num" else self.take()[0]

    def factor(self):
        a = self.atom()
        if self.peek() == "^":
            self.take("^")
            a = "%s^%s" % (a, self.exponent())
        return a

    def group(self):
        self.take("{")
        e = self.expr()
        self.take("}")
        return e

    def atom(self):
        k = self.peek()
        if k is None:
            raise ValueError("unexpected end")
        if k.isdigit():
            return self.take()[0]
        if k == "x":
            self.take()
            return "x"
        if k == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return "(%s)" % e
        if k == "{":
            return "(%s)" % self.group()
        if k == "\\frac":
            self.take()
            n, d = self.group(), self.group()
            if n.isdigit() and d.isdigit():
                return "%s/%s" % (n, d)
            if d.isdigit():
                return "(%s)/%s" % (n, d)
            return "(%s)/(%s)" % (n, d)
        if k == "\\pi":
            self.take()
            return "pi"
        if k == "\\zeta_3":
            self.take()
            return "zeta3"
        if k == "\\log":
            self.take()
            power = None
            if self.peek() == "^":
                self.take("^")
                power = self.exponent()
            arg = self.atom()
            if arg.startswith("(") and arg.endswith(")"):
                arg = arg[1:-1]
            s = "log(%s)" % arg
            return "%s^%s" % (s, power) if power else s
        if k == "Li":
            idx = self.take()[1]
            self.take("(")
            args = [self.expr()]
            while self.peek() == ",":
                self.take(",")
                args.append(self.expr())
            self.take(")")
            if "," in idx:
                return "Li[%s](%s)" % (idx, ",".join(args))
            return "Li%s(%s)" % (idx, args[0])
        raise ValueError("unexpected token " + k)


def convert(latex):
    p = Parser(tokenize(latex))
    e = p.expr()
    if p.i != len(p.t):
        raise ValueError("trailing tokens")
    return e


HEAD = re.compile(r"^H\(([-0-9, ]+);\s*x\)\s*&\\,=")


def extract(lines):
    entries, cur, body = [], None, []
    for line in lines:
        m = HEAD.match(line.strip())
        if m:
            if cur:
                entries.append((cur, " ".join(body)))
            cur, body = m.group(1).replace(" ", ""), [line.strip()[m.end() :]]
        elif cur and not line.strip().startswith("\\"):
            body.append(line.strip())
    if cur:
        entries.append((cur, " ".join(body)))
    out = []
    for idx, text in entries:
        text = re.sub(r"\\,[,.]\s*$", "", text.strip())
        text = re.sub(r"\\,[,.]", " ", text)
        out.append({"index": [int(v) for v in idx.split(",")], "expression": convert(text)})
    return out


if __name__ == "__main__":
    src, first, last, dst = sys.argv[1], int(sys.argv[2]), int(sys.argv[3]), sys.argv[4]
    with open(src) as f:
        lines = f.read().splitlines()[first - 1 : last]
    with open(dst, "w") as f:
        rows = [json.dumps(e) for e in extract(lines)]
        f.write("[\n " + ",\n ".join(rows) + "\n]\n")
