"""A small standalone checker for the Graphviz DOT language, test use only.

Implements the published DOT grammar (graphs, node/edge/attr statements,
attribute lists, quoted and numeral IDs, comments) as a hand-rolled
recursive-descent parser.  It shares no code with the production DOT writer,
so it can serve as an independent syntax oracle.  Subgraphs and ports are
supported shallowly; HTML-like labels are not.
"""

from __future__ import annotations

import re


class DotSyntaxError(ValueError):
    pass


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|//[^\n]*|\#[^\n]*|/\*.*?\*/)
  | (?P<arrow>->|--)
  | (?P<punct>[{}\[\];,=:])
  | (?P<quoted>"(?:[^"\\]|\\.)*")
  | (?P<num>-?(?:\.\d+|\d+(?:\.\d*)?))
  | (?P<name>[A-Za-z_\200-\377][A-Za-z_0-9\200-\377]*)
    """,
    re.VERBOSE | re.DOTALL,
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DotSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, -1)

    def next(self):
        tok = self.peek()
        if tok[0] is None:
            raise DotSyntaxError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.next()
        if text != value:
            raise DotSyntaxError(f"expected {value!r}, found {text!r} at offset {pos}")

    def accept(self, value):
        if self.peek()[1] == value:
            self.i += 1
            return True
        return False

    def id_token(self):
        kind, text, pos = self.next()
        if kind not in ("quoted", "num", "name"):
            raise DotSyntaxError(f"expected an ID, found {text!r} at offset {pos}")
        return text

    def parse_graph(self):
        if self.peek()[1] == "strict":
            self.next()
        kind, text, _ = self.next()
        if text not in ("digraph", "graph"):
            raise DotSyntaxError(f"expected 'digraph' or 'graph', found {text!r}")
        if self.peek()[1] != "{":
            self.id_token()
        self.expect("{")
        self.parse_stmt_list()
        self.expect("}")
        if self.peek()[0] is not None:
            raise DotSyntaxError(f"trailing content after graph: {self.peek()[1]!r}")

    def parse_stmt_list(self):
        while self.peek()[1] not in ("}", None):
            self.parse_stmt()
            self.accept(";")

    def parse_stmt(self):
        if self.peek()[1] == "subgraph" or self.peek()[1] == "{":
            self.parse_subgraph()
            self.parse_edge_rest()
            return
        if self.peek()[1] in ("graph", "node", "edge"):
            self.next()
            self.parse_attr_lists(required=True)
            return
        self.id_token()
        if self.accept("="):
            self.id_token()
            return
        self.parse_port()
        self.parse_edge_rest()
        self.parse_attr_lists(required=False)

    def parse_subgraph(self):
        if self.accept("subgraph"):
            if self.peek()[1] != "{":
                self.id_token()
        self.expect("{")
        self.parse_stmt_list()
        self.expect("}")

    def parse_edge_rest(self):
        while self.peek()[0] == "arrow":
            self.next()
            if self.peek()[1] == "subgraph" or self.peek()[1] == "{":
                self.parse_subgraph()
            else:
                self.id_token()
                self.parse_port()

    def parse_port(self):
        if self.accept(":"):
            self.id_token()
            if self.accept(":"):
                self.id_token()

    def parse_attr_lists(self, required):
        seen = False
        while self.peek()[1] == "[":
            seen = True
            self.expect("[")
            while self.peek()[1] != "]":
                self.id_token()
                if self.accept("="):
                    self.id_token()
                if self.peek()[1] in (",", ";"):
                    self.next()
            self.expect("]")
        if required and not seen:
            raise DotSyntaxError("attribute statement without attribute list")


def check_dot(text: str) -> None:
    """Raise DotSyntaxError unless ``text`` is a syntactically valid graph."""
    tokens = _tokenize(text)
    if not tokens:
        raise DotSyntaxError("empty input")
    _Parser(tokens).parse_graph()
