"""
Module File I/O and Grammars.
JSON module files (explicit or recipe-form), point expressions such as
"2/3*x1 - y2", and construction recipes such as "omega(trivial(ev), 2)".
"""
import json
import re
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as PydanticValidationError
from sympy import QQ

from superjordan.algebra.linalg import SparseMatrix, format_rational, parse_rational
from superjordan.config import settings
from superjordan.errors import ParseError, UnknownGenerator, ValidationError, ZeroPoint
from superjordan.models.algebra import EVEN, ODD, AlgebraSpec, OddPoint
from superjordan.models.supermodule import Supermodule
from superjordan.services import constructions as C
from superjordan.services.superalgebra import validate
from superjordan.utils.logging_config import get_logger

logger = get_logger(__name__)

FORMAT_TAG = "superjordan-module/1"


class ModuleFile(BaseModel):
    """On-disk module description; either explicit actions or a recipe."""
    model_config = ConfigDict(extra="forbid")

    format: str = FORMAT_TAG
    algebra: str
    name: Optional[str] = None
    description: Optional[str] = None
    valid: Optional[bool] = Field(default=None, description="expected outcome of validate()")
    dim: Optional[int] = Field(default=None, ge=0)
    parity: Optional[List[Union[int, str]]] = None
    actions: Dict[str, List[Tuple[int, int, Union[int, str]]]] = Field(default_factory=dict)
    recipe: Optional[str] = None


def _parity_token(value, index: int) -> int:
    text = str(value).lower()
    if text in ("0", "ev", "even"):
        return EVEN
    if text in ("1", "od", "odd"):
        return ODD
    raise ParseError(f"bad parity {value!r}", position=f"field parity[{index}]", expected="0/1 or ev/od")


def parse_module(text: str, check: bool = True, base_dir: Optional[Path] = None) -> Supermodule:
    """
    Parse a module file.

    Raises:
        ParseError: malformed JSON, fields, shapes or entries.
        ValidationError: actions violate the relations (only when check is set).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", position=f"line {exc.lineno}, column {exc.colno}",
                         expected="a JSON object")
    if not isinstance(data, dict):
        raise ParseError("module file must be a JSON object", position="line 1", expected="{...}")
    try:
        doc = ModuleFile.model_validate(data)
    except PydanticValidationError as exc:
        err = exc.errors()[0]
        loc = ".".join(str(part) for part in err["loc"])
        raise ParseError(err["msg"], position=f"field {loc}", expected=err.get("type"))

    if doc.format != FORMAT_TAG:
        raise ParseError(f"unsupported format {doc.format!r}", position="field format", expected=FORMAT_TAG)
    try:
        algebra = AlgebraSpec.parse(doc.algebra)
    except ValueError as exc:
        raise ParseError(str(exc), position="field algebra", expected="sl11, f(r) or exterior(s)")

    if doc.recipe is not None:
        if doc.actions or doc.parity is not None:
            raise ParseError("recipe files cannot list actions or parity", position="field recipe")
        module = build_recipe(doc.recipe, algebra, base_dir)
        if doc.dim is not None and doc.dim != module.dim:
            raise ParseError(f"recipe builds dim {module.dim}, file says {doc.dim}", position="field dim")
        module = module.renamed(doc.name or module.name)
    else:
        if doc.dim is None or doc.parity is None:
            raise ParseError("explicit module files need dim and parity", position="field dim",
                             expected="dim and parity")
        if len(doc.parity) != doc.dim:
            raise ParseError(f"parity has {len(doc.parity)} entries, dim is {doc.dim}",
                             position="field parity", expected=f"{doc.dim} entries")
        parity = tuple(_parity_token(v, k) for k, v in enumerate(doc.parity))
        actions = {}
        for g, triplets in doc.actions.items():
            if g not in algebra.generator_names:
                raise UnknownGenerator(f"{g!r} is not a generator of {algebra}", position=f"field actions.{g}")
            entries = {}
            for k, (i, j, value) in enumerate(triplets):
                where = f"field actions.{g}[{k}]"
                if not (0 <= i < doc.dim and 0 <= j < doc.dim):
                    raise ParseError(f"entry ({i}, {j}) out of range", position=where,
                                     expected=f"indices in [0, {doc.dim})")
                if (i, j) in entries:
                    raise ParseError(f"duplicate entry ({i}, {j})", position=where)
                try:
                    entries[(i, j)] = parse_rational(str(value))
                except ValueError as exc:
                    raise ParseError(str(exc), position=where, expected='"p/q"')
            actions[g] = SparseMatrix(doc.dim, doc.dim, entries)
        module = Supermodule(algebra, parity, actions, doc.name)

    if check:
        violations = validate(module)
        if violations:
            raise ValidationError(violations)
    return module


def load_module(path: Union[str, Path], check: bool = True) -> Supermodule:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", position=str(path))
    return parse_module(text, check=check, base_dir=path.parent)


def load_fixture(name: str, check: bool = True) -> Supermodule:
    """Shipped fixture by stem, e.g. "k0_plus_dualk0"."""
    return load_module(settings.fixtures_dir / f"{name}.json", check=check)


def serialize_module(m: Supermodule, name: Optional[str] = None, description: Optional[str] = None) -> str:
    """Canonical explicit JSON form; entries sorted, zero actions omitted."""
    payload = {
        "format": FORMAT_TAG,
        "algebra": m.algebra.descriptor,
        "dim": m.dim,
        "parity": list(m.parity),
        "actions": {
            g: [[i, j, format_rational(v)] for i, j, v in m.actions[g].entries()]
            for g in m.algebra.generator_names
            if not m.actions[g].is_zero()
        },
    }
    label = name or m.name
    if label:
        payload["name"] = label
    if description:
        payload["description"] = description
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def save_module(m: Supermodule, path: Union[str, Path], name: Optional[str] = None) -> Path:
    path = Path(path)
    path.write_text(serialize_module(m, name=name))
    return path


# -- point expressions ---------------------------------------------------------

_POINT_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/]))")
_SL11_ALIASES = {"x": "x1", "y": "y1"}


def _tokenize(text: str, pattern) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = pattern.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", position=f"column {pos + 1}")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    return tokens


def parse_point(text: str, algebra: AlgebraSpec, require_nonzero: bool = True) -> OddPoint:
    """
    Parse expr := ['+'|'-'] term (('+'|'-') term)*, term := [rational '*'] generator.

    Repeated generators accumulate. Over sl11 the bare names x and y are
    accepted for x1 and y1.
    """
    tokens = _tokenize(text, _POINT_TOKEN)
    if not tokens:
        raise ParseError("empty point expression", position="column 1", expected="a generator")
    coeffs: Dict[str, object] = {}
    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else ("end", "", len(text) + 1)

    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if peek()[1] == "-" else 1
        k += 1
    while True:
        kind, value, col = peek()
        coeff = QQ.one
        if kind == "num":
            k += 1
            num = int(value)
            den = 1
            if peek()[:2] == ("op", "/"):
                k += 1
                kind2, value2, col2 = peek()
                if kind2 != "num":
                    raise ParseError("expected denominator", position=f"column {col2}", expected="digits")
                den = int(value2)
                if den == 0:
                    raise ParseError("zero denominator", position=f"column {col2}")
                k += 1
            coeff = QQ(num, den)
            kind3, _, col3 = peek()
            if peek()[:2] != ("op", "*"):
                raise ParseError("expected '*' after coefficient", position=f"column {col3}", expected="'*'")
            k += 1
            kind, value, col = peek()
        if kind != "name":
            raise ParseError("expected a generator name", position=f"column {col}", expected="generator")
        name = _SL11_ALIASES.get(value, value) if algebra.descriptor == "sl11" else value
        if name not in algebra.generator_names:
            raise UnknownGenerator(f"{value!r} is not a generator of {algebra}", position=f"column {col}")
        if name not in algebra.odd_generators:
            raise UnknownGenerator(f"{value!r} is even; points use odd generators", position=f"column {col}")
        k += 1
        coeffs[name] = coeffs.get(name, QQ.zero) + sign * coeff
        kind, value, col = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            sign = -1 if value == "-" else 1
            k += 1
            continue
        raise ParseError(f"unexpected {value!r}", position=f"column {col}", expected="'+', '-' or end")

    point = OddPoint.from_map(algebra, coeffs)
    if require_nonzero and point.is_zero():
        raise ZeroPoint(f"{text!r} is the zero point")
    return point


# -- construction recipes ------------------------------------------------------

_RECIPE_TOKEN = re.compile(r'\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_]\w*)|(?P<string>"[^"]*")|(?P<punct>[(),]))')

_PARITY_WORDS = {"ev": EVEN, "even": EVEN, "od": ODD, "odd": ODD}


class _RecipeParser:
    """Recursive descent over the construction grammar."""

    def __init__(self, text: str, algebra: AlgebraSpec, base_dir: Optional[Path]):
        self.text = text
        self.tokens = _tokenize(text, _RECIPE_TOKEN)
        self.k = 0
        self.algebra = algebra
        self.base_dir = base_dir or Path.cwd()

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else ("end", "", len(self.text) + 1)

    def expect(self, value: str):
        kind, got, col = self.peek()
        if got != value:
            raise ParseError(f"unexpected {got or 'end of input'!r}", position=f"column {col}", expected=f"'{value}'")
        self.k += 1

    def parse(self) -> Supermodule:
        module = self.recipe()
        kind, value, col = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {value!r}", position=f"column {col}", expected="end of recipe")
        return module

    def args(self) -> List[Tuple[str, object, int]]:
        out = []
        if self.peek()[1] != "(":
            return out
        self.k += 1
        if self.peek()[1] == ")":
            self.k += 1
            return out
        while True:
            kind, value, col = self.peek()
            if kind == "int":
                self.k += 1
                out.append(("int", int(value), col))
            elif kind == "name" and value in _PARITY_WORDS:
                self.k += 1
                out.append(("parity", _PARITY_WORDS[value], col))
            else:
                out.append(("module", self.recipe(), col))
            kind, value, col = self.peek()
            if value == ",":
                self.k += 1
                continue
            self.expect(")")
            return out

    def recipe(self) -> Supermodule:
        kind, value, col = self.peek()
        if kind == "string":
            self.k += 1
            return load_module(self.base_dir / value.strip('"'))
        if kind != "name":
            raise ParseError(f"unexpected {value or 'end of input'!r}", position=f"column {col}",
                             expected="a construction name")
        self.k += 1
        builder = _BUILDERS.get(value)
        if builder is None:
            raise ParseError(f"unknown construction {value!r}", position=f"column {col}",
                             expected=", ".join(sorted(_BUILDERS)))
        args = self.args()
        try:
            return builder(self.algebra, args)
        except _ArityError as exc:
            raise ParseError(f"{value}: {exc}", position=f"column {col}", expected=exc.expected)


class _ArityError(Exception):
    def __init__(self, message: str, expected: str):
        self.expected = expected
        super().__init__(message)


def _shape(args, *kinds: str, optional: int = 0) -> List[object]:
    got = [a[0] for a in args]
    required = list(kinds[: len(kinds) - optional])
    if not (len(required) <= len(got) <= len(kinds)) or any(g != w for g, w in zip(got, kinds)):
        raise _ArityError(f"got ({', '.join(got)})", expected=f"({', '.join(kinds)})")
    return [a[1] for a in args]


def _nary(args) -> List[Supermodule]:
    if not args or any(a[0] != "module" for a in args):
        raise _ArityError("needs one or more modules", expected="(module, ...)")
    return [a[1] for a in args]


_BUILDERS: Dict[str, Callable[[AlgebraSpec, list], Supermodule]] = {
    "trivial": lambda alg, a: C.trivial(alg, *(_shape(a, "parity", optional=1) or [EVEN])),
    "pi": lambda alg, a: C.parity_shift(*_shape(a, "module")),
    "sum": lambda alg, a: C.direct_sum(*_nary(a)),
    "tensor": lambda alg, a: C.tensor(*_shape(a, "module", "module")),
    "dual": lambda alg, a: C.dual(*_shape(a, "module")),
    "hom": lambda alg, a: C.hom(*_shape(a, "module", "module")),
    "kac0": lambda alg, a: (_shape(a), C.kac0())[1],
    "dual_kac0": lambda alg, a: (_shape(a), C.dual_kac0())[1],
    "free": lambda alg, a: C.free_module(alg, *_shape(a, "int", "parity", optional=2)),
    "omega": lambda alg, a: C.omega(*_shape(a, "module", "int")),
    "quotient_by_socle": lambda alg, a: C.quotient_by_socle(*_shape(a, "module")),
    "radical": lambda alg, a: C.radical_module(*_shape(a, "module")),
    "socle": lambda alg, a: C.socle_module(*_shape(a, "module")),
    "head": lambda alg, a: C.head(*_shape(a, "module")),
    "w": lambda alg, a: C.w_module(*_shape(a, "int")),
    "wdual": lambda alg, a: C.w_dual_module(*_shape(a, "int")),
    "random": lambda alg, a: C.random_module(alg, *_shape(a, "int", "int")),
}


def build_recipe(text: str, algebra: Optional[AlgebraSpec] = None, base_dir: Optional[Path] = None) -> Supermodule:
    """Materialize a construction recipe over the given algebra context."""
    algebra = algebra or default_algebra_for(text)
    module = _RecipeParser(text, algebra, base_dir).parse()
    logger.debug(f"recipe {text!r} over {algebra} -> dim {module.dim}")
    return module.renamed(module.name or text)


def default_algebra_for(text: str) -> AlgebraSpec:
    """sl11 when the recipe uses the Kac modules, exterior(2) otherwise."""
    names = {tok[1] for tok in _tokenize(text, _RECIPE_TOKEN) if tok[0] == "name"}
    if names & {"kac0", "dual_kac0"}:
        return AlgebraSpec.sl11()
    return AlgebraSpec.exterior(2)
