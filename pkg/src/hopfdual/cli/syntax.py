"""Session file syntax: tokenizer-free recursive descent into a small AST, and its printer.

A session is a sequence of statements separated by newlines or ``;``;
``#`` starts a comment.  Statements are

    ring <Z | Q | Zmod n | Fp p | Z<n>>
    <kind> <name> = <expr>        kind in algebra, coalgebra, hopf, action,
                                  coaction, pairing, ideal, dualelem
    <task> <head>(<args>)         task in check, dual, rat, smash, bm, purity
    <task>(<args>)

Expressions are calls ``f(a, b, key=v)``, lists ``[a, b]`` and atoms
(names, numbers, polynomials such as ``x^2-3x+1``).  Whitespace inside
atoms is dropped, so printing is canonical.
"""

from dataclasses import dataclass, field

from ..errors import ParseError

OBJECT_KINDS = ("algebra", "coalgebra", "hopf", "action", "coaction", "pairing", "ideal", "dualelem")
TASK_KINDS = ("check", "dual", "rat", "smash", "bm", "purity")

_STOP = ",)]=;\n#"


@dataclass(frozen=True)
class Atom:
    text: str
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ListExpr:
    items: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    kwargs: tuple = ()
    pos: tuple = field(default=(0, 0), compare=False)

    def kw(self, key, default=None):
        for k, v in self.kwargs:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class RingStmt:
    text: str
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ObjectStmt:
    kind: str
    name: str
    expr: object
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TaskStmt:
    kind: str
    head: str
    args: tuple
    kwargs: tuple = ()
    pos: tuple = field(default=(0, 0), compare=False)

    def kw(self, key, default=None):
        for k, v in self.kwargs:
            if k == key:
                return v
        return default


def _is_ident(s):
    return bool(s) and (s[0].isalpha() or s[0] == "_") and all(c.isalnum() or c == "_" for c in s)


class _Reader:
    def __init__(self, text):
        self.text = text
        self.i = 0
        self.line_starts = [0]
        for k, c in enumerate(text):
            if c == "\n":
                self.line_starts.append(k + 1)

    def pos(self, i=None):
        i = self.i if i is None else i
        line = 0
        for k, s in enumerate(self.line_starts):
            if s <= i:
                line = k
        return (line + 1, i - self.line_starts[line] + 1)

    def error(self, msg, i=None):
        line, col = self.pos(i)
        return ParseError(line, col, msg)

    def peek(self):
        return self.text[self.i] if self.i < len(self.text) else ""

    def skip_blanks(self):
        """Skip spaces and tabs (not newlines)."""
        while self.peek() in (" ", "\t", "\r") and self.peek():
            self.i += 1

    def expect(self, ch):
        self.skip_blanks()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.i += 1

    def word(self):
        self.skip_blanks()
        start = self.i
        while self.peek() and (self.peek().isalnum() or self.peek() == "_"):
            self.i += 1
        return self.text[start:self.i]

    def expr(self):
        self.skip_blanks()
        start = self.i
        c = self.peek()
        if c == "[":
            self.i += 1
            items = self._sequence("]")[0]
            return ListExpr(tuple(items), self.pos(start))
        # identifier directly followed by '(' is a call
        j = self.i
        while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
            j += 1
        name = self.text[self.i:j]
        if _is_ident(name) and j < len(self.text) and self.text[j] == "(":
            self.i = j + 1
            args, kwargs = self._sequence(")")
            return Call(name, tuple(args), tuple(kwargs), self.pos(start))
        return self.atom()

    def atom(self):
        self.skip_blanks()
        start = self.i
        depth = 0
        out = []
        while self.peek():
            c = self.peek()
            if depth == 0 and c in _STOP:
                break
            if c in "([":
                depth += 1
            elif c in ")]":
                depth -= 1
            if c not in " \t\r":
                out.append(c)
            self.i += 1
        text = "".join(out)
        if not text:
            raise self.error("expected an expression", start)
        if depth != 0:
            raise self.error("unbalanced brackets", start)
        return Atom(text, self.pos(start))

    def _sequence(self, close):
        args, kwargs = [], []
        self.skip_blanks()
        if self.peek() == close:
            self.i += 1
            return args, kwargs
        while True:
            self._skip_newlines()
            save = self.i
            key = self.word()
            self.skip_blanks()
            if key and _is_ident(key) and self.peek() == "=" and close == ")":
                self.i += 1
                kwargs.append((key, self.expr()))
            else:
                self.i = save
                if kwargs:
                    raise self.error("positional argument after keyword argument")
                args.append(self.expr())
            self._skip_newlines()
            c = self.peek()
            if c == ",":
                self.i += 1
                continue
            if c == close:
                self.i += 1
                return args, kwargs
            raise self.error(f"expected ',' or {close!r}")

    def _skip_newlines(self):
        while self.peek() in (" ", "\t", "\r", "\n") and self.peek():
            self.i += 1


def _split_statements(text):
    """Yield (offset, chunk) for each statement; separators inside brackets do not count."""
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        c = text[i]
        if c in "([":
            depth += 1
        elif c in ")]":
            depth -= 1
        elif c in ";\n" and depth <= 0:
            yield start, text[start:i]
            start = i + 1
            depth = 0
        i += 1
    yield start, text[start:]


def parse_text(text):
    """Parse a session into a list of statements (no name resolution)."""
    stmts = []
    # blank out comments so offsets stay valid
    out = []
    in_comment = False
    for c in text:
        if c == "#":
            in_comment = True
        if c == "\n":
            in_comment = False
        out.append(" " if in_comment else c)
    clean = "".join(out)
    r = _Reader(clean)
    for offset, chunk in _split_statements(clean):
        if not chunk.strip():
            continue
        r.i = offset
        r._skip_newlines()
        start = r.i
        kw = r.word()
        if kw == "ring":
            rest = chunk[r.i - offset:].strip()
            if not rest:
                raise r.error("ring statement needs a ring")
            stmts.append(RingStmt(" ".join(rest.split()), r.pos(start)))
            continue
        if kw in OBJECT_KINDS:
            name = r.word()
            if not _is_ident(name):
                raise r.error(f"{kw} statement needs a name")
            r.expect("=")
            expr = r.expr()
            stmt = ObjectStmt(kw, name, expr, r.pos(start))
        elif kw in TASK_KINDS:
            r.skip_blanks()
            if r.peek() == "(":
                r.i += 1
                args, kwargs = r._sequence(")")
                stmt = TaskStmt(kw, None, tuple(args), tuple(kwargs), r.pos(start))
            else:
                e = r.expr()
                if isinstance(e, Call):
                    stmt = TaskStmt(kw, e.name, e.args, e.kwargs, r.pos(start))
                elif isinstance(e, Atom) and _is_ident(e.text):
                    stmt = TaskStmt(kw, e.text, (), (), r.pos(start))
                else:
                    raise r.error(f"malformed {kw} task", start)
        else:
            raise r.error(f"unknown statement {kw!r}" if kw else "expected a statement", start)
        r.skip_blanks()
        end = offset + len(chunk)
        if r.i < end and clean[r.i:end].strip():
            raise r.error("unexpected trailing input")
        stmts.append(stmt)
    return stmts


def print_expr(e):
    if isinstance(e, Atom):
        return e.text
    if isinstance(e, ListExpr):
        return "[" + ", ".join(print_expr(x) for x in e.items) + "]"
    if isinstance(e, Call):
        parts = [print_expr(x) for x in e.args] + [f"{k}={print_expr(v)}" for k, v in e.kwargs]
        return f"{e.name}(" + ", ".join(parts) + ")"
    raise TypeError(f"not an expression: {e!r}")


def print_statement(s):
    if isinstance(s, RingStmt):
        return f"ring {s.text}"
    if isinstance(s, ObjectStmt):
        return f"{s.kind} {s.name} = {print_expr(s.expr)}"
    parts = [print_expr(x) for x in s.args] + [f"{k}={print_expr(v)}" for k, v in s.kwargs]
    inner = "(" + ", ".join(parts) + ")"
    if s.head is None:
        return f"{s.kind}{inner}"
    if not s.args and not s.kwargs:
        return f"{s.kind} {s.head}"
    return f"{s.kind} {s.head}{inner}"


def print_statements(stmts):
    return "".join(print_statement(s) + "\n" for s in stmts)
