"""Session scripts: declarations plus ``run`` commands, with text or JSON reports.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    ring NAME = QQ[x, y] [/ (polys)];
    ideal NAME = (polys);                      # in the most recently declared ring
    module NAME = submodule(RING^r; [..], [..]);
    module NAME = cokernel(RING^r; [..], [..]);
    run COMMAND arg ... key=value ...;
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .arprobe import sample_maximal_rt, strong_uniform_number
from .groebner import FreeModuleElem, buchberger
from .idealops import (
    HomogeneityError,
    IdealHandle,
    ModulePresentation,
    hilbert_dims,
    ideal_intersection,
    module_intersection,
)
from .polycore import LEX, DEGREVLEX, ParseError, RingDescriptor, parse_polynomial
from .reeslab import assoc_graded_presentation, rees_ideal, relation_type
from .torlab import tor1, tor2_cyclic
from .transcheck import (
    DEFAULT_BOUNDS,
    check_flatness_criterion,
    check_intersection_condition,
    check_pi_iso,
    check_rt_tensor_bound,
    check_sigma_iso,
    check_theorem1,
    check_tor2_clause,
)

SCHEMA = 1
EXIT_OK, EXIT_PARSE, EXIT_DISAGREE = 0, 1, 2


class SessionError(Exception):
    """A diagnostic with a 1-based line and column."""

    def __init__(self, kind, message, line=None, col=None):
        self.kind, self.message, self.line, self.col = kind, message, line, col
        loc = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{loc}{kind}: {message}")


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

@dataclass
class RingDecl:
    name: str
    variables: tuple
    relations: tuple = ()
    pos: int = field(default=0, compare=False)

    def text(self):
        s = f"ring {self.name} = QQ[{', '.join(self.variables)}]"
        if self.relations:
            s += " / (" + ", ".join(self.relations) + ")"
        return s + ";"


@dataclass
class IdealDecl:
    name: str
    ring: str
    generators: tuple
    pos: int = field(default=0, compare=False)

    def text(self):
        return f"ideal {self.name} = ({', '.join(self.generators)});"


@dataclass
class ModuleDecl:
    name: str
    kind: str
    ring: str
    rank: int
    vectors: tuple
    pos: int = field(default=0, compare=False)

    def text(self):
        vecs = ", ".join("[" + ", ".join(v) + "]" for v in self.vectors)
        return f"module {self.name} = {self.kind}({self.ring}^{self.rank}; {vecs});"


@dataclass
class RunCmd:
    command: str
    args: tuple
    options: tuple
    pos: int = field(default=0, compare=False)
    line: int = field(default=0, compare=False)

    def text(self):
        parts = ["run", self.command, *self.args, *(f"{k}={v}" for k, v in self.options)]
        return " ".join(parts) + ";"


@dataclass
class SessionScript:
    statements: list

    @property
    def commands(self):
        return [s for s in self.statements if isinstance(s, RunCmd)]

    def text(self):
        return "\n".join(s.text() for s in self.statements) + ("\n" if self.statements else "")


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

def _linecol(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _strip_comments(text):
    """Blank out ``#`` comments, keeping offsets intact."""
    out = []
    for line in text.split("\n"):
        i = line.find("#")
        out.append(line if i < 0 else line[:i] + " " * (len(line) - i))
    return "\n".join(out)


def _split_top(text, base, sep):
    """Split at ``sep`` outside brackets; yields (piece, absolute offset of piece start)."""
    depth = 0
    start = 0
    out = []
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], base + start))
            start = i + 1
    out.append((text[start:], base + start))
    res = []
    for piece, off in out:
        lead = len(piece) - len(piece.lstrip())
        res.append((piece.strip(), off + lead))
    return res


_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_RING_RE = re.compile(rf"ring\s+({_NAME})\s*=\s*QQ\s*\[(.*?)\]\s*(?:/\s*\((.*)\))?\s*\Z", re.S)
_IDEAL_RE = re.compile(rf"ideal\s+({_NAME})\s*=\s*\((.*)\)\s*\Z", re.S)
_MODULE_RE = re.compile(rf"module\s+({_NAME})\s*=\s*(submodule|cokernel)\s*\(\s*({_NAME})\s*\^\s*(\d+)\s*;(.*)\)\s*\Z",
                        re.S)
_RUN_RE = re.compile(rf"run\s+({_NAME})(.*)\Z", re.S)

COMMANDS = {
    "relation_type", "rees_ideal", "assoc_graded", "tor", "transversality", "tor2_clause", "sigma_iso",
    "pi_iso", "rt_bound", "flatness", "artin_rees", "sample_maximal_rt", "groebner", "intersect",
    "hilbert", "intersection_condition",
}


class _Parser:
    def __init__(self, text):
        self.raw = text
        self.text = _strip_comments(text)
        self.rings = {}
        self.ideals = {}
        self.modules = {}
        self.current = None

    def err(self, kind, msg, offset):
        line, col = _linecol(self.raw, offset)
        raise SessionError(kind, msg, line, col)

    def statements(self):
        pieces = _split_top(self.text, 0, ";")
        out = []
        for piece, off in pieces[:-1]:
            if not piece:
                continue
            out.append(self.statement(piece, off))
        last_piece, last_off = pieces[-1]
        if last_piece:
            self.err("syntax error", "missing ';' at end of statement", last_off + len(last_piece))
        return out

    def polys(self, ring, text, off, allow_empty=True):
        items = _split_top(text, off, ",")
        if len(items) == 1 and not items[0][0]:
            if allow_empty:
                return ()
            self.err("syntax error", "empty list", off)
        out = []
        for s, o in items:
            if not s:
                self.err("syntax error", "empty polynomial", o)
            try:
                out.append(str(parse_polynomial(ring, s)))
            except ParseError as e:
                self.err("syntax error", str(e).split(" (at offset")[0], o + (e.pos or 0))
            except ValueError as e:
                self.err("syntax error", str(e), o)
        return tuple(out)

    def statement(self, s, off):
        word = s.split(None, 1)[0]
        if word == "ring":
            m = _RING_RE.match(s)
            if not m:
                self.err("syntax error", "expected 'ring NAME = QQ[vars] [/ (polys)]'", off)
            name = m.group(1)
            vars_ = tuple(v.strip() for v in m.group(2).split(",") if v.strip())
            for v in vars_:
                if not re.fullmatch(_NAME, v):
                    self.err("syntax error", f"bad variable name {v!r}", off + m.start(2))
            try:
                base = RingDescriptor(vars_)
            except ValueError as e:
                self.err("syntax error", str(e), off + m.start(2))
            rels = ()
            if m.group(3) is not None:
                rels = self.polys(base, m.group(3), off + m.start(3))
            ring = RingDescriptor(vars_, rels)
            self.rings[name] = ring
            self.current = name
            return RingDecl(name, vars_, rels, off)
        if word == "ideal":
            m = _IDEAL_RE.match(s)
            if not m:
                self.err("syntax error", "expected 'ideal NAME = (polys)'", off)
            if self.current is None:
                self.err("undefined name", "no ring declared before this ideal", off)
            ring = self.rings[self.current]
            gens = self.polys(ring, m.group(2), off + m.start(2))
            self.ideals[m.group(1)] = IdealHandle(ring, [ring(g) for g in gens])
            return IdealDecl(m.group(1), self.current, gens, off)
        if word == "module":
            m = _MODULE_RE.match(s)
            if not m:
                self.err("syntax error", "expected 'module NAME = submodule|cokernel(RING^r; vectors)'", off)
            rname = m.group(3)
            if rname not in self.rings:
                self.err("undefined name", f"ring {rname!r} is not declared", off + m.start(3))
            ring = self.rings[rname]
            rank = int(m.group(4))
            if rank < 1:
                self.err("syntax error", "rank must be positive", off + m.start(4))
            vecs = []
            body_off = off + m.start(5)
            for v, o in _split_top(m.group(5), body_off, ","):
                if not v:
                    if m.group(5).strip():
                        self.err("syntax error", "empty vector", o)
                    continue
                if not (v.startswith("[") and v.endswith("]")):
                    self.err("syntax error", "vectors are written [p1, ..., pr]", o)
                comps = self.polys(ring, v[1:-1], o + 1, allow_empty=False)
                if len(comps) != rank:
                    self.err("ring mismatch", f"vector has {len(comps)} components, expected {rank}", o)
                vecs.append(comps)
            elems = [FreeModuleElem(ring, [ring(c) for c in v]) for v in vecs]
            kind = m.group(2)
            if kind == "submodule":
                mod = ModulePresentation.submodule(ring, rank, elems)
            else:
                mod = ModulePresentation.cokernel(ring, rank, elems)
            self.modules[m.group(1)] = mod
            self.current = rname
            return ModuleDecl(m.group(1), kind, rname, rank, tuple(vecs), off)
        if word == "run":
            m = _RUN_RE.match(s)
            if not m:
                self.err("syntax error", "expected 'run COMMAND args'", off)
            cmd = m.group(1)
            if cmd not in COMMANDS:
                self.err("syntax error", f"unknown command {cmd!r}", off + m.start(1))
            args, opts = [], []
            rest_off = off + m.start(2)
            for tok, o in _split_ws(m.group(2), rest_off):
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    if not re.fullmatch(_NAME, k) or not v:
                        self.err("syntax error", f"bad option {tok!r}", o)
                    opts.append((k, v))
                else:
                    if not re.fullmatch(_NAME, tok):
                        self.err("syntax error", f"bad argument {tok!r}", o)
                    if tok not in self.rings and tok not in self.ideals and tok not in self.modules:
                        self.err("undefined name", f"{tok!r} is not declared", o)
                    args.append(tok)
            rings = {self._ring_of(a) for a in args}
            if len(rings) > 1:
                self.err("ring mismatch", "operands live in different rings: " + ", ".join(sorted(rings)), off)
            line, _ = _linecol(self.raw, off)
            return RunCmd(cmd, tuple(args), tuple(opts), off, line)
        self.err("syntax error", f"unknown statement {word!r}", off)

    def _ring_of(self, name):
        if name in self.rings:
            return self.rings[name].canonical()
        if name in self.ideals:
            return self.ideals[name].ring.canonical()
        return self.modules[name].ring.canonical()


def _split_ws(text, base):
    out = []
    depth = 0
    start = None
    for i, ch in enumerate(text + " "):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch.isspace() and depth == 0:
            if start is not None:
                out.append((text[start:i], base + start))
                start = None
        elif start is None:
            start = i
    return out


def parse_session(text: str) -> SessionScript:
    """Parse a session script; raises :class:`SessionError` with line/column."""
    p = _Parser(text)
    return SessionScript(p.statements())


def format_session(script: SessionScript) -> str:
    return script.text()


# --------------------------------------------------------------------------
# execution
# --------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


class _Env:
    def __init__(self):
        self.rings, self.ideals, self.modules = {}, {}, {}

    def declare(self, st):
        if isinstance(st, RingDecl):
            self.rings[st.name] = RingDescriptor(st.variables, st.relations)
        elif isinstance(st, IdealDecl):
            ring = self.rings[st.ring]
            self.ideals[st.name] = IdealHandle(ring, [ring(g) for g in st.generators])
        elif isinstance(st, ModuleDecl):
            ring = self.rings[st.ring]
            elems = [FreeModuleElem(ring, [ring(c) for c in v]) for v in st.vectors]
            if st.kind == "submodule":
                self.modules[st.name] = ModulePresentation.submodule(ring, st.rank, elems)
            else:
                self.modules[st.name] = ModulePresentation.cokernel(ring, st.rank, elems)

    def get(self, name):
        for table in (self.ideals, self.modules, self.rings):
            if name in table:
                return table[name]
        raise SessionError("undefined name", name)

    def canonical(self, name):
        obj = self.get(name)
        if isinstance(obj, IdealHandle):
            return f"ideal {obj.ring.canonical()} ({', '.join(sorted(map(str, obj.generators)))})"
        if isinstance(obj, ModulePresentation):
            return "module " + obj.canonical()
        return "ring " + obj.canonical()


def _as_module(obj):
    if obj is None:
        return None
    if isinstance(obj, ModulePresentation):
        return obj
    if isinstance(obj, RingDescriptor):
        return ModulePresentation.free(obj, 1)
    if isinstance(obj, IdealHandle):
        return obj.as_module()
    raise SessionError("type error", f"cannot use {type(obj).__name__} as a module")


def _need_ideal(obj, what):
    if not isinstance(obj, IdealHandle):
        raise SessionError("type error", f"{what} must be an ideal")
    return obj


def _int_opt(opts, key, default):
    v = opts.get(key, default)
    try:
        return int(v)
    except (TypeError, ValueError):
        raise SessionError("type error", f"option {key} must be an integer") from None


def _parse_points(text):
    pts = re.findall(r"\(([^()]*)\)", text)
    if not pts:
        raise SessionError("syntax error", "points=[(a,b),...] expected")
    out = []
    for p in pts:
        try:
            out.append(tuple(Fraction(c.strip()) for c in p.split(",") if c.strip()))
        except ValueError:
            raise SessionError("syntax error", f"bad point ({p})") from None
    return out


def execute(cmd: RunCmd, env: _Env, defaults: dict, jobs=None):
    """Run one command; returns (result dict, disagreement flag)."""
    opts = dict(cmd.options)
    objs = [env.get(a) for a in cmd.args]
    pmax = _int_opt(opts, "pmax", defaults["pmax"])
    qmax = _int_opt(opts, "qmax", defaults["qmax"])
    nmax = _int_opt(opts, "nmax", defaults["nmax"])
    dmax = _int_opt(opts, "dmax", defaults["dmax"])
    c = cmd.command

    def arg(i, what):
        if i >= len(objs):
            raise SessionError("type error", f"{c} needs {what}")
        return objs[i]

    def opt_module(i):
        return _as_module(objs[i]) if i < len(objs) else None

    if c == "relation_type":
        I = _need_ideal(arg(0, "an ideal"), "first argument")
        M = opt_module(1)
        r = relation_type(I, M, dmax if "dmax" in opts else None)
        return {"rt": r.rt, "minimal_generator_tdegrees": list(r.minimal_generator_tdegrees),
                "effective_dims": r.effective_dims.to_json()}, False
    if c == "rees_ideal":
        R = rees_ideal(_need_ideal(arg(0, "an ideal"), "argument"))
        return {"ring": R.ring.canonical(), "generators": [str(g) for g in R.defining_ideal.generators]}, False
    if c == "assoc_graded":
        I = _need_ideal(arg(0, "an ideal"), "first argument")
        G = assoc_graded_presentation(I, opt_module(1))
        if hasattr(G, "defining_ideal"):
            return {"ring": G.ring.canonical(), "generators": [str(g) for g in G.defining_ideal.generators]}, False
        return {"ring": G.ring.canonical(), "presentation": str(G.presentation)}, False
    if c == "tor":
        I = _need_ideal(arg(0, "an ideal"), "first argument")
        X = arg(1, "a second operand")
        index = _int_opt(opts, "index", 1)
        if index == 2:
            r = tor2_cyclic(I, _need_ideal(X, "second argument of tor index=2"), dmax)
        else:
            r = tor1(I, X if isinstance(X, IdealHandle) else _as_module(X), dmax)
        return {"index": r.index, "is_zero": r.is_zero,
                "graded_dims": r.graded_dims.to_json() if r.graded_dims is not None else None}, False
    if c == "transversality":
        I = _need_ideal(arg(0, "two ideals"), "first argument")
        J = _need_ideal(arg(1, "two ideals"), "second argument")
        th = check_theorem1(I, J, opt_module(2), pmax, qmax, dmax, nmax=_int_opt(opts, "nmax", pmax + qmax)
                            if "nmax" in opts else None, jobs=jobs)
        return th.to_json(), not th.agree
    if c == "tor2_clause":
        I = _need_ideal(arg(0, "two ideals"), "first argument")
        J = _need_ideal(arg(1, "two ideals"), "second argument")
        tor, iso, agree = check_tor2_clause(I, J, pmax, qmax, dmax, jobs=jobs)
        return {"tor_side": tor.to_json(), "iso_side": iso.to_json(), "agree": agree}, not agree
    if c == "sigma_iso":
        I, J = _need_ideal(arg(0, "two ideals"), "I"), _need_ideal(arg(1, "two ideals"), "J")
        return check_sigma_iso(I, J, opt_module(2), nmax, dmax).to_json(), False
    if c == "pi_iso":
        I, J = _need_ideal(arg(0, "two ideals"), "I"), _need_ideal(arg(1, "two ideals"), "J")
        return check_pi_iso(I, J, opt_module(2), pmax, qmax, dmax).to_json(), False
    if c == "intersection_condition":
        I, J = _need_ideal(arg(0, "two ideals"), "I"), _need_ideal(arg(1, "two ideals"), "J")
        return check_intersection_condition(I, J, opt_module(2), pmax, qmax).to_json(), False
    if c == "rt_bound":
        I, J = _need_ideal(arg(0, "two ideals"), "I"), _need_ideal(arg(1, "two ideals"), "J")
        return check_rt_tensor_bound(I, J, opt_module(2), pmax, qmax, dmax).to_json(), False
    if c == "flatness":
        P = _need_ideal(arg(0, "an ideal"), "first argument")
        X = _need_ideal(arg(1, "an ideal holding the sequence"), "second argument")
        return check_flatness_criterion(P, list(X.generators), opt_module(2), pmax, qmax, dmax).to_json(), False
    if c == "artin_rees":
        m = _need_ideal(arg(0, "an ideal"), "first argument")
        M, N = _as_module(arg(1, "M")), _as_module(arg(2, "N"))
        return strong_uniform_number(m, M, N, nmax).to_json(), False
    if c == "sample_maximal_rt":
        A = arg(0, "a ring")
        if not isinstance(A, RingDescriptor):
            A, M = A.ring, _as_module(A)
        else:
            M = opt_module(1)
        pts = _parse_points(opts.get("points", ""))
        r = sample_maximal_rt(A, M, pts, jobs=jobs)
        return {"by_point": {"(" + ",".join(map(str, p)) + ")": v for p, v in r["by_point"].items()},
                "max": r["max"], "note": "maximum over the sample only"}, False
    if c == "groebner":
        X = arg(0, "an ideal or module")
        order = {"lex": LEX, "degrevlex": DEGREVLEX}.get(opts.get("order", "degrevlex"))
        if order is None:
            raise SessionError("type error", "order must be lex or degrevlex")
        if isinstance(X, IdealHandle):
            if not X.generators:
                return {"basis": []}, False
            return {"basis": [str(g) for g in X.groebner(order).elements]}, False
        M = _as_module(X)
        rows = list(M.generators) + list(M.relations)
        gb = buchberger(rows) if rows else None
        return {"basis": [str(g) for g in gb.elements] if gb else []}, False
    if c == "intersect":
        X, Y = arg(0, "two operands"), arg(1, "two operands")
        if isinstance(X, IdealHandle) and isinstance(Y, IdealHandle):
            return {"generators": [str(g) for g in ideal_intersection(X, Y).generators]}, False
        res = module_intersection(_as_module(X), _as_module(Y))
        return {"generators": [str(g) for g in res.generators]}, False
    if c == "hilbert":
        X = arg(0, "an operand")
        return {"dims": hilbert_dims(X, dmax).as_list()}, False
    raise SessionError("syntax error", f"unknown command {c!r}")


def run_session(script: SessionScript, json_mode=False, defaults=None, jobs=None):
    """Execute the script in order; returns ``(reports, exit_code)``."""
    defaults = dict(DEFAULT_BOUNDS, **(defaults or {}))
    env = _Env()
    reports = []
    code = EXIT_OK
    index = 0
    for st in script.statements:
        if not isinstance(st, RunCmd):
            env.declare(st)
            continue
        index += 1
        fp_src = "\n".join([st.command] + [env.canonical(a) for a in st.args] +
                           [f"{k}={v}" for k, v in sorted(st.options)] +
                           [f"default.{k}={v}" for k, v in sorted(defaults.items())])
        report = {
            "index": index,
            "command": st.text(),
            "inputs_fingerprint": hashlib.sha256(fp_src.encode()).hexdigest(),
            "engine_version": __version__,
        }
        t0 = time.perf_counter()
        try:
            result, disagree = execute(st, env, defaults, jobs)
            report["status"] = "ok"
            report["result"] = _jsonable(result)
            if disagree:
                report["status"] = "disagreement"
                code = EXIT_DISAGREE
        except SessionError as e:
            report["status"] = "error"
            report["error"] = f"command {index} (line {st.line}): {e.kind}: {e.message}"
            code = max(code, EXIT_PARSE) if code != EXIT_DISAGREE else code
        except (HomogeneityError, ValueError) as e:
            report["status"] = "error"
            report["error"] = f"command {index} (line {st.line}): {type(e).__name__}: {e}"
            code = max(code, EXIT_PARSE) if code != EXIT_DISAGREE else code
        report["wall_time"] = round(time.perf_counter() - t0, 6)
        reports.append(report)
    return reports, code


def _text_report(r):
    lines = [f"[{r['index']}] {r['command']}"]
    if r["status"] == "error":
        lines.append(f"  error: {r['error']}")
        return "\n".join(lines)
    res = r["result"]
    lines += _summarise(res, "  ")
    if r["status"] == "disagreement":
        lines.append("  DISAGREEMENT between the two sides (internal error)")
    lines.append(f"  inputs {r['inputs_fingerprint'][:16]}  time {r['wall_time']:.3f}s")
    return "\n".join(lines)


def _summarise(res, pad):
    out = []
    if isinstance(res, dict) and "status" in res and "check" in res:
        s = f"{pad}{res['check']}: {res['status']}"
        if res.get("witness"):
            s += f" witness={json.dumps(res['witness'], sort_keys=True)}"
        return [s]
    for k in sorted(res):
        v = res[k]
        if isinstance(v, dict) and "status" in v and "check" in v:
            out += _summarise(v, pad)
        elif isinstance(v, (dict, list)) and len(json.dumps(v)) > 200:
            out.append(f"{pad}{k}: ...")
        else:
            out.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    return out


def _document(reports, code, wall):
    return {"schema": SCHEMA, "engine_version": __version__, "exit_code": code, "reports": reports,
            "wall_time": round(wall, 6)}


# --------------------------------------------------------------------------
# selftest
# --------------------------------------------------------------------------

SELFTEST = [
    ("node_sigma", "ring B = QQ[z,t] / (z*t); ideal I = (z); ideal J = (t); run sigma_iso I J nmax=6 dmax=10;",
     lambda r: r["status"] == "HOLDS_UP_TO_BOUND"),
    ("node_pi", "ring B = QQ[z,t] / (z*t); ideal I = (z); ideal J = (t); run pi_iso I J dmax=10;",
     lambda r: r["status"] == "FAILS" and (r["witness"]["p"], r["witness"]["q"]) == (1, 1)),
    ("node_transversality",
     "ring B = QQ[z,t] / (z*t); ideal I = (z); ideal J = (t); run transversality I J pmax=2 qmax=2 dmax=8;",
     lambda r: r["agree"] and r["condition_i"]["status"] == "FAILS" and r["condition_ii"]["status"] == "FAILS"),
    ("node_tor2", "ring B = QQ[z,t] / (z*t); ideal I = (z); ideal J = (t); run tor I J index=2 dmax=6;",
     lambda r: r["graded_dims"] == {"2": 1}),
    ("rt_regular_sequence", "ring A = QQ[x,y]; ideal I = (x, y); run relation_type I;", lambda r: r["rt"] == 1),
    ("rt_square_of_maximal", "ring A = QQ[x,y]; ideal I = (x^2, x*y, y^2); run relation_type I;",
     lambda r: r["rt"] == 2),
    ("rt_node", "ring B = QQ[z,t] / (z*t); ideal I = (z, t); run relation_type I;", lambda r: r["rt"] == 2),
    ("artin_rees_x2", "ring A = QQ[x]; ideal m = (x); ideal N = (x^2); run artin_rees m A N nmax=6;",
     lambda r: r["s"] == 2),
    ("coordinate_transversality", "ring A = QQ[x,y]; ideal I = (x); ideal J = (y); run transversality I J;",
     lambda r: r["agree"] and r["condition_i"]["status"] == "HOLDS_UP_TO_BOUND"),
    ("sample_rt", "ring A = QQ[x,y]; run sample_maximal_rt A points=[(0,0),(1,2),(-1,3)];",
     lambda r: r["max"] == 1),
]


def selftest(json_mode=False, jobs=None):
    out = []
    ok_all = True
    for name, script, check in SELFTEST:
        reports, code = run_session(parse_session(script), json_mode, jobs=jobs)
        rep = reports[-1]
        passed = rep["status"] == "ok" and bool(check(rep["result"]))
        ok_all &= passed
        out.append({"name": name, "passed": passed, "report": rep})
    return out, (EXIT_OK if ok_all else EXIT_PARSE)


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(prog="transversal", description="Rees algebras, Tor and transversality checks")
    sub = ap.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run a session script")
    run.add_argument("file")
    run.add_argument("--json", action="store_true")
    run.add_argument("--jobs", type=int, default=None)
    for b in ("pmax", "qmax", "nmax", "dmax"):
        run.add_argument(f"--{b}", type=int, default=None, help=f"default {DEFAULT_BOUNDS[b]}")
    st = sub.add_parser("selftest", help="run the built-in fixture suite")
    st.add_argument("--json", action="store_true")
    st.add_argument("--jobs", type=int, default=None)
    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    if args.cmd == "selftest":
        results, code = selftest(args.json, args.jobs)
        if args.json:
            doc = {"schema": SCHEMA, "engine_version": __version__, "exit_code": code, "selftest": results,
                   "wall_time": round(time.perf_counter() - t0, 6)}
            print(json.dumps(doc, sort_keys=True, indent=2))
        else:
            for r in results:
                print(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}")
        return code
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        script = parse_session(text)
    except SessionError as e:
        print(f"{args.file}:{e}", file=sys.stderr)
        return EXIT_PARSE
    overrides = {b: getattr(args, b) for b in ("pmax", "qmax", "nmax", "dmax") if getattr(args, b) is not None}
    reports, code = run_session(script, args.json, overrides, args.jobs)
    for r in reports:
        if r["status"] == "error":
            print(r["error"], file=sys.stderr)
        elif r["status"] == "disagreement":
            print(f"command {r['index']}: internal disagreement between proven-equivalent conditions",
                  file=sys.stderr)
    if args.json:
        print(json.dumps(_document(reports, code, time.perf_counter() - t0), sort_keys=True, indent=2))
    else:
        for r in reports:
            print(_text_report(r))
    return code


if __name__ == "__main__":
    sys.exit(main())
