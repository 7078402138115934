"""Text formats: the quiver DSL plus bimodule / module / filtration files.

Quiver DSL (UTF-8, ``#`` comments)::

    quiver <name>
    vertex <id> ...
    arrow <id> : <src> -> <dst>
    rel <term> (+ <term> | - <term>)*

where a term is ``[<coef>*] a_k. ... .a_1`` in function order (the right
factor applies first).  Alternatively a file may declare a built-in
family window::

    family zigzag-A-inf window 1..6
    family linear-A-inf window 1..5 suffix '
    family mesh-ZA-inf window rows 1..6 cols -4..4 star 1,1

Bimodule files::

    dim (i,j) = n
    label (i,j) = b1 b2 ...
    left <arrow> (i,j) -> (i',j) = [[..],[..]]
    right <arrow> (i,j) -> (i,j') = [[..]]

Module files use ``mdim <vertex> = n`` and ``maction <arrow> = [[..]]``;
filtration files use ``layer <j>: v1 v2 ...`` with layer 0 optional.
"""

from .field import QQ
from .quiver import Arrow, Path, Quiver, QuiverPresentation, Relation
from .families import FamilySpec, materialize_window


class DSLError(ValueError):
    def __init__(self, message, line=None, col=None):
        loc = f" (line {line}" + (f", col {col})" if col is not None else ")") if line else ""
        super().__init__(message + loc)
        self.line = line
        self.col = col


def _logical_lines(text):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_scalar(field, tok, line=None):
    try:
        return field.parse(tok)
    except (ValueError, ZeroDivisionError):
        raise DSLError(f"bad scalar literal {tok!r}", line)


def _parse_term(field, tok, n):
    """One relation term ``[coef*] a_k. ... .a_1`` -> (coef, [traversal names])."""
    coef = field.one
    if "*" in tok:
        c, tok = tok.split("*", 1)
        coef = parse_scalar(field, c, n)
    names = [t.strip() for t in tok.split(".")]
    if any(not t for t in names):
        raise DSLError(f"empty arrow name in term {tok!r}", n)
    return coef, list(reversed(names))  # function order -> traversal order


def parse_presentation(text, field=QQ):
    """Parse the quiver DSL into a presentation.

    Relations must be admissible: every term a path of length >= 2,
    with all terms parallel.
    """
    name = "quiver"
    vertices = []
    arrows = []
    rel_specs = []
    family = None
    for n, line in _logical_lines(text):
        parts = line.split()
        head = parts[0]
        if head == "quiver":
            if len(parts) != 2:
                raise DSLError("expected: quiver <name>", n)
            name = parts[1]
        elif head == "vertex":
            if len(parts) < 2:
                raise DSLError("expected: vertex <id> ...", n)
            vertices.extend(parts[1:])
        elif head == "arrow":
            # arrow <id> : <src> -> <dst>
            rest = line[len("arrow"):].strip()
            if ":" not in rest or "->" not in rest:
                raise DSLError("expected: arrow <id> : <src> -> <dst>", n)
            aname, ends = rest.split(":", 1)
            src, dst = ends.split("->", 1)
            arrows.append((aname.strip(), src.strip(), dst.strip(), n))
        elif head == "rel":
            rel_specs.append((n, line[len("rel"):].strip()))
        elif head == "family":
            family = (n, parts[1:])
        else:
            raise DSLError(f"unknown statement {head!r}", n)
    if family is not None:
        if vertices or arrows or rel_specs:
            raise DSLError("family files cannot also declare vertices/arrows/relations", family[0])
        return _parse_family(family[1], family[0], field)
    vset = set(vertices)
    for aname, src, dst, n in arrows:
        if src not in vset:
            raise DSLError(f"undeclared vertex {src!r}", n)
        if dst not in vset:
            raise DSLError(f"undeclared vertex {dst!r}", n)
    quiver = Quiver(name, vertices, [Arrow(a, s, t) for a, s, t, _ in arrows])
    arrow_names = {a for a, _, _, _ in arrows}
    relations = []
    for n, body in rel_specs:
        tokens = body.replace("+", " + ").replace("-", " - ").split()
        # re-join: signs separate terms; a term itself has no spaces
        terms = []
        sign = 1
        buf = []
        for tok in tokens:
            if tok in ("+", "-"):
                if buf:
                    terms.append((sign, "".join(buf)))
                    buf = []
                sign = 1 if tok == "+" else -1
            else:
                buf.append(tok)
        if buf:
            terms.append((sign, "".join(buf)))
        if not terms:
            raise DSLError("empty relation", n)
        parsed = []
        for sign, tok in terms:
            coef, names = _parse_term(field, tok, n)
            for a in names:
                if a not in arrow_names:
                    raise DSLError(f"undeclared arrow {a!r}", n)
            if len(names) < 2:
                raise DSLError(f"non-admissible relation: term {tok!r} has length < 2", n)
            src = quiver.arrow(names[0]).source
            try:
                path = Path(quiver, src, names)
            except ValueError:
                raise DSLError(f"non-composable term {tok!r}", n)
            parsed.append((field.mul(field.of(sign), coef), path))
        try:
            relations.append(Relation(parsed, field))
        except ValueError as e:
            raise DSLError(str(e), n)
    return QuiverPresentation(quiver, relations, field)


def _parse_range(tok, n):
    if ".." not in tok:
        raise DSLError(f"expected a range lo..hi, got {tok!r}", n)
    lo, hi = tok.split("..", 1)
    try:
        return int(lo), int(hi)
    except ValueError:
        raise DSLError(f"bad range bounds {tok!r}", n)


def _parse_family(parts, n, field):
    if not parts:
        raise DSLError("expected: family <id> window ...", n)
    fid = parts[0]
    kw = parts[1:]
    spec = None
    if fid in ("linear-A-inf", "zigzag-A-inf"):
        if len(kw) < 2 or kw[0] != "window":
            raise DSLError("expected: window lo..hi", n)
        lo, hi = _parse_range(kw[1], n)
        suffix = ""
        if len(kw) >= 4 and kw[2] == "suffix":
            suffix = kw[3]
        spec = FamilySpec(fid, {"lo": lo, "hi": hi}, suffix=suffix)
    elif fid == "mesh-ZA-inf":
        if len(kw) < 5 or kw[0] != "window" or kw[1] != "rows" or kw[3] != "cols":
            raise DSLError("expected: window rows lo..hi cols lo..hi [star r,c]", n)
        rows = _parse_range(kw[2], n)
        cols = _parse_range(kw[4], n)
        star = ""
        if len(kw) >= 7 and kw[5] == "star":
            star = kw[6]
        spec = FamilySpec(fid, {"rows": rows, "cols": cols}, star=star)
    else:
        raise DSLError(f"unknown family id {fid!r}", n)
    try:
        return materialize_window(spec, field=field)
    except ValueError as e:
        raise DSLError(str(e), n)


# -- matrix literals ----------------------------------------------------


def parse_matrix_literal(field, text, rows, cols, line=None):
    """Parse ``[[a,b],[c,d]]`` into a Matrix of the stated shape."""
    from .linalg import Matrix

    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise DSLError(f"bad matrix literal {text!r}", line)
    inner = s[1:-1].strip()
    row_texts = []
    depth = 0
    buf = ""
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                buf = ""
                continue
        if ch == "]":
            depth -= 1
            if depth == 0:
                row_texts.append(buf)
                buf = ""
                continue
        if depth >= 1:
            buf += ch
    data = []
    for rt in row_texts:
        entries = [e for e in (x.strip() for x in rt.split(",")) if e]
        data.append([parse_scalar(field, e, line) for e in entries])
    if rows == 0 or cols == 0:
        return Matrix(field, rows, cols)
    if len(data) != rows or any(len(r) != cols for r in data):
        raise DSLError(
            f"matrix literal has shape {len(data)}x{len(data[0]) if data else 0}, expected {rows}x{cols}",
            line,
        )
    return Matrix(field, rows, cols, data)


def format_matrix(m):
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in m.data) + "]"


def _parse_pair(tok, n):
    tok = tok.strip()
    if not (tok.startswith("(") and tok.endswith(")")) or tok.count(",") != 1:
        raise DSLError(f"expected a pair (i,j), got {tok!r}", n)
    i, j = tok[1:-1].split(",")
    return i.strip(), j.strip()


def parse_bimodule(text, tU, tT):
    """Parse a bimodule file against the two presentations (U left, T right)."""
    from .bimodule import Bimodule

    field = tU.field
    dims = {}
    labels = {}
    left = {}
    right = {}
    for n, line in _logical_lines(text):
        parts = line.split(None, 1)
        head = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if head == "dim":
            pair_txt, val = rest.split("=", 1)
            pair = _parse_pair(pair_txt, n)
            dims[pair] = int(val.strip())
        elif head == "label":
            pair_txt, val = rest.split("=", 1)
            labels[_parse_pair(pair_txt, n)] = val.split()
        elif head in ("left", "right"):
            arrow_name, rest2 = rest.split(None, 1)
            pairs_txt, mat_txt = rest2.split("=", 1)
            src_txt, dst_txt = pairs_txt.split("->", 1)
            src = _parse_pair(src_txt, n)
            dst = _parse_pair(dst_txt, n)
            rows = dims.get(dst, 0)
            cols = dims.get(src, 0)
            mat = parse_matrix_literal(field, mat_txt, rows, cols, n)
            (left if head == "left" else right).setdefault(arrow_name, {})[src] = mat
        else:
            raise DSLError(f"unknown bimodule statement {head!r}", n)
    return Bimodule(tU, tT, dims, left=left, right=right, labels=labels)


def parse_module(text, pres):
    from .modules import Module

    field = pres.field
    dims = {}
    acts = {}
    pending = []
    for n, line in _logical_lines(text):
        parts = line.split(None, 1)
        head = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if head == "mdim":
            v, val = rest.split("=", 1)
            v = v.strip()
            if not pres.quiver.has_vertex(v):
                raise DSLError(f"unknown vertex {v!r}", n)
            dims[v] = int(val.strip())
        elif head == "maction":
            a, mat_txt = rest.split("=", 1)
            pending.append((n, a.strip(), mat_txt))
        else:
            raise DSLError(f"unknown module statement {head!r}", n)
    for n, a, mat_txt in pending:
        try:
            arr = pres.quiver.arrow(a)
        except KeyError:
            raise DSLError(f"unknown arrow {a!r}", n)
        acts[a] = parse_matrix_literal(
            field, mat_txt, dims.get(arr.target, 0), dims.get(arr.source, 0), n
        )
    m = Module(pres, dims, acts, check=False)
    bad = m.relation_violations()
    if bad:
        raise DSLError(f"module not bounded by the ideal: {bad[0]}")
    return m


def parse_filtration(text):
    """Layer lists, cumulative by layer index; returns {j: [vertex ids]}."""
    layers = {}
    for n, line in _logical_lines(text):
        if not line.startswith("layer"):
            raise DSLError(f"expected 'layer <j>: ...', got {line!r}", n)
        head, _, rest = line.partition(":")
        try:
            j = int(head.split()[1])
        except (IndexError, ValueError):
            raise DSLError("expected 'layer <j>: ...'", n)
        layers[j] = rest.split()
    return layers
