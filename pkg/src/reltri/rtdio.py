"""Reading and writing maps in the RTD v1 text format.

The format is line-oriented, whitespace-tokenized, UTF-8 with LF endings::

    %rtd 1
    params g=4 k=3,3,3 p=0 b=4
    vertex 0 rot 1 5 2 6
    edge 1~2 label=a0
    orient a0 1
    basepoint 3
    embed 4 9

``#`` starts a comment running to the end of the line.  The ``params`` line
is optional and validated by the diagram layer when present.  ``embed``
lines are this package's extension for tube channels joining two faces
(each named by a dart); maps without detached pieces never need them.

``dumps_map`` emits canonical bytes: darts are renamed by the canonical
breadth-first relabeling, so isomorphic maps (regardless of input
numbering or orientation seeds) serialize identically, and parse followed
by serialize is the identity on canonical files.
"""

from __future__ import annotations

from .combmap import CombMap, MapFormatError, StrandLabel


def iter_content_lines(text):
    """Yield (lineno, tokens) for non-empty lines with comments stripped."""
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if "#" in raw:
            raw = raw[:raw.index("#")]
        tokens = raw.split()
        if tokens:
            yield lineno, tokens


def _parse_int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise MapFormatError("line %d: bad %s %r" % (lineno, what, tok))


def _parse_params(tokens, lineno):
    fields = {}
    for tok in tokens:
        if "=" not in tok:
            raise MapFormatError("line %d: bad params token %r" % (lineno, tok))
        key, val = tok.split("=", 1)
        if key in ("g", "p", "b"):
            fields[key] = _parse_int(val, lineno, key)
        elif key == "k":
            parts = val.split(",")
            if len(parts) != 3:
                raise MapFormatError("line %d: k needs three values" % lineno)
            fields["k"] = tuple(_parse_int(x, lineno, "k") for x in parts)
        else:
            raise MapFormatError("line %d: unknown params key %r"
                                 % (lineno, key))
    for key in ("g", "k", "p", "b"):
        if key not in fields:
            raise MapFormatError("line %d: params missing %s" % (lineno, key))
    return fields


def loads_map(text):
    """Parse RTD v1 text into (CombMap, params dict or None)."""
    lines = list(iter_content_lines(text))
    if not lines:
        raise MapFormatError("empty input")
    lineno, head = lines[0]
    if head[:1] != ["%rtd"]:
        raise MapFormatError("line %d: missing %%rtd header" % lineno)
    if head != ["%rtd", "1"]:
        raise MapFormatError("line %d: unsupported RTD version %s"
                             % (lineno, " ".join(head[1:])))

    params = None
    rot = {}
    partner = {}
    labels = {}
    orient = {}
    basepoints = set()
    channels = []

    for lineno, tokens in lines[1:]:
        word = tokens[0]
        if word == "params":
            if params is not None:
                raise MapFormatError("line %d: duplicate params" % lineno)
            params = _parse_params(tokens[1:], lineno)
        elif word == "vertex":
            if len(tokens) < 4 or tokens[2] != "rot":
                raise MapFormatError("line %d: vertex needs 'rot'" % lineno)
            vid = _parse_int(tokens[1], lineno, "vertex id")
            if vid in rot:
                raise MapFormatError("line %d: duplicate vertex %d"
                                     % (lineno, vid))
            darts = tuple(_parse_int(t, lineno, "dart") for t in tokens[3:])
            if len(set(darts)) != len(darts):
                raise MapFormatError("line %d: repeated dart in rotation"
                                     % lineno)
            rot[vid] = darts
        elif word == "edge":
            if len(tokens) != 3 or "~" not in tokens[1] \
                    or not tokens[2].startswith("label="):
                raise MapFormatError("line %d: bad edge line" % lineno)
            a, _, b = tokens[1].partition("~")
            da = _parse_int(a, lineno, "dart")
            db = _parse_int(b, lineno, "dart")
            if da == db:
                raise MapFormatError(
                    "line %d: dart %d paired with itself" % (lineno, da))
            lab = StrandLabel.parse(tokens[2][len("label="):])
            for d in (da, db):
                if d in partner:
                    raise MapFormatError("line %d: dart %d used in two edges"
                                         % (lineno, d))
            partner[da] = db
            partner[db] = da
            labels[da] = lab
            labels[db] = lab
        elif word == "orient":
            if len(tokens) != 3:
                raise MapFormatError("line %d: bad orient line" % lineno)
            lab = StrandLabel.parse(tokens[1])
            if lab in orient:
                raise MapFormatError("line %d: duplicate orient for %s"
                                     % (lineno, lab))
            orient[lab] = _parse_int(tokens[2], lineno, "dart")
        elif word == "basepoint":
            if len(tokens) != 2:
                raise MapFormatError("line %d: bad basepoint line" % lineno)
            basepoints.add(_parse_int(tokens[1], lineno, "vertex id"))
        elif word == "embed":
            if len(tokens) != 3:
                raise MapFormatError("line %d: bad embed line" % lineno)
            channels.append((_parse_int(tokens[1], lineno, "dart"),
                             _parse_int(tokens[2], lineno, "dart")))
        else:
            raise MapFormatError("line %d: unknown directive %r"
                                 % (lineno, word))

    m = CombMap(rot, partner, labels, orient, basepoints, channels)
    return m, params


def load_map(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads_map(fh.read())


def format_params(params) -> str:
    return "params g=%d k=%d,%d,%d p=%d b=%d" % (
        params["g"], params["k"][0], params["k"][1], params["k"][2],
        params["p"], params["b"])


def dumps_map(m: CombMap, params=None) -> str:
    """Serialize a map to canonical RTD v1 text."""
    from .canonical import canonical_map

    cm = canonical_map(m.normalize())
    out = ["%rtd 1"]
    if params is not None:
        out.append(format_params(params))
    for v in cm.vertices:
        ds = cm.rot(v)
        k = ds.index(min(ds))
        ds = ds[k:] + ds[:k]
        out.append("vertex %d rot %s" % (v, " ".join(str(d) for d in ds)))
    for e in cm.edges():
        da, db = sorted(e)
        out.append("edge %d~%d label=%s" % (da, db, cm.label(da)))
    for lab in cm.strand_labels():
        if not lab.is_boundary:
            out.append("orient %s %d" % (lab, cm.orient_seed(lab)))
    for v in sorted(cm.basepoints):
        out.append("basepoint %d" % v)
    for da, db in cm.channels:
        out.append("embed %d %d" % (da, db))
    return "\n".join(out) + "\n"


def dump_map(path, m, params=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_map(m, params))
