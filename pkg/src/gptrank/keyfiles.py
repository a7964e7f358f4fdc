"""Key and ciphertext files in three interchangeable encodings.

* ``bin``: canonical binary.  Magic ``GPTRANK1``, a kind byte, a fixed
  parameter header, big-endian fixed-width field elements, and a raw
  sha256 trailer over everything before it.
* ``hex``: line-oriented text.  ``key: value`` pairs with field elements
  as fixed-width hex, closed by a ``checksum:`` line over the body.
* ``json``: one object whose ``checksum`` member is the sha256 of the
  canonical dump of the remaining members.

Loaders sniff the encoding, verify the checksum, and revalidate the
algebra (parameter constraints, scrambler invertibility, element ranges)
before handing back live objects.  Any mismatch raises FormatError.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError, ParameterError
from .fields import get_field
from .gabidulin import GabidulinCode
from .gpt import GptParams, GptPrivateKey, GptPublicKey, ScramblerMode, Variant
from .linalg import identity_matrix, mat_inv, mat_mul

__all__ = [
    "MAGIC",
    "CiphertextBundle",
    "save_public_key",
    "save_private_key",
    "save_ciphertext",
    "load_public_key",
    "load_private_key",
    "load_ciphertext",
    "sniff_format",
]

MAGIC = b"GPTRANK1"
_KIND_PUBLIC = 1
_KIND_PRIVATE = 2
_KIND_CIPHERTEXT = 3
_KIND_NAMES = {_KIND_PUBLIC: "public", _KIND_PRIVATE: "private", _KIND_CIPHERTEXT: "ciphertext"}

# q, N, n, k, t1, variant, t2, p, m_cols, mode, s_ext, x_rank + 1
_PARAMS_STRUCT = struct.Struct(">IHHHHBHHHBHH")


@dataclass
class CiphertextBundle:
    """One encrypted message: field identity plus the padded blocks."""

    q: int
    N: int
    modulus: tuple[int, ...]
    block_len: int
    msg_len: int
    blocks: list[list[int]]

    def field(self):
        return get_field(self.q, self.N, self.modulus)


def _elem_width(ctx) -> int:
    return ((ctx.size - 1).bit_length() + 7) // 8


def _normalize_fmt(fmt: str) -> str:
    name = str(fmt).strip().lower()
    if name in ("bin", "binary"):
        return "bin"
    if name in ("hex", "text", "txt"):
        return "hex"
    if name == "json":
        return "json"
    raise ParameterError(f"unknown file format {fmt!r} (choose bin, hex, or json)")


def sniff_format(data: bytes) -> str:
    if data.startswith(MAGIC):
        return "bin"
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise FormatError("not a recognized key file (bad magic, not text)") from None
    if text.lstrip().startswith("{"):
        return "json"
    return "hex"


# -- parameter header ------------------------------------------------


def _pack_params(params: GptParams) -> bytes:
    mode = 1 if params.scrambler_mode == ScramblerMode.EXTENSION_FIELD else 0
    rx = 0 if params.x_ordinary_rank is None else params.x_ordinary_rank + 1
    head = _PARAMS_STRUCT.pack(
        params.q,
        params.N,
        params.n,
        params.k,
        params.t1,
        int(params.variant),
        params.t2,
        params.p,
        params.m_cols,
        mode,
        params.s_ext,
        rx,
    )
    mod = struct.pack(">H", len(params.modulus))
    mod += b"".join(struct.pack(">I", c) for c in params.modulus)
    return head + mod


def _unpack_params(buf: bytes, off: int) -> tuple[GptParams, int]:
    try:
        q, N, n, k, t1, variant, t2, p, m_cols, mode, s_ext, rx = _PARAMS_STRUCT.unpack_from(
            buf, off
        )
        off += _PARAMS_STRUCT.size
        (mod_len,) = struct.unpack_from(">H", buf, off)
        off += 2
        modulus = struct.unpack_from(f">{mod_len}I", buf, off)
        off += 4 * mod_len
    except struct.error as exc:
        raise FormatError(f"truncated parameter header: {exc}") from None
    return (
        _build_params(
            q=q,
            N=N,
            n=n,
            k=k,
            t1=t1,
            variant=variant,
            t2=t2,
            p=p,
            m_cols=m_cols,
            mode="extension_field" if mode else "base_field",
            s_ext=s_ext,
            x_rank=rx - 1 if rx else None,
            modulus=modulus,
        ),
        off,
    )


def _build_params(*, q, N, n, k, t1, variant, t2, p, m_cols, mode, s_ext, x_rank, modulus):
    try:
        return GptParams(
            N=N,
            n=n,
            k=k,
            t1=t1,
            q=q,
            variant=Variant.parse(variant),
            t2=t2,
            p=p,
            m_cols=m_cols,
            scrambler_mode=mode,
            s_ext=s_ext,
            x_ordinary_rank=x_rank,
            modulus=tuple(modulus),
        )
    except (ParameterError, ValueError) as exc:
        raise FormatError(f"file carries invalid parameters: {exc}") from None


_PARAM_KEYS = (
    "q", "N", "n", "k", "t1", "variant", "t2", "p", "m_cols", "mode", "s_ext", "x_rank",
)


def _params_scalars(params: GptParams) -> dict:
    return {
        "q": params.q,
        "N": params.N,
        "n": params.n,
        "k": params.k,
        "t1": params.t1,
        "variant": int(params.variant),
        "t2": params.t2,
        "p": params.p,
        "m_cols": params.m_cols,
        "mode": params.scrambler_mode.value,
        "s_ext": params.s_ext,
        "x_rank": params.x_ordinary_rank,
    }


def _params_from_scalars(values: dict) -> GptParams:
    missing = [key for key in _PARAM_KEYS if key not in values]
    if missing:
        raise FormatError(f"missing parameter fields: {', '.join(missing)}")
    if "modulus" not in values:
        raise FormatError("missing parameter fields: modulus")
    return _build_params(
        q=values["q"],
        N=values["N"],
        n=values["n"],
        k=values["k"],
        t1=values["t1"],
        variant=values["variant"],
        t2=values["t2"],
        p=values["p"],
        m_cols=values["m_cols"],
        mode=values["mode"],
        s_ext=values["s_ext"],
        x_rank=values["x_rank"],
        modulus=values["modulus"],
    )


# -- binary bodies ------------------------------------------------


def _pack_elems(ctx, vec) -> bytes:
    w = _elem_width(ctx)
    return b"".join(int(v).to_bytes(w, "big") for v in vec)


def _unpack_elems(ctx, buf: bytes, off: int, count: int) -> tuple[list[int], int]:
    w = _elem_width(ctx)
    end = off + w * count
    if end > len(buf):
        raise FormatError("truncated element data")
    out = []
    for i in range(count):
        v = int.from_bytes(buf[off + i * w : off + (i + 1) * w], "big")
        if v >= ctx.size:
            raise FormatError(f"element value {v} outside the field")
        out.append(v)
    return out, end


def _pack_matrix(ctx, M) -> bytes:
    return b"".join(_pack_elems(ctx, row) for row in M)


def _unpack_matrix(ctx, buf, off, rows, cols):
    out = []
    for _ in range(rows):
        row, off = _unpack_elems(ctx, buf, off, cols)
        out.append(row)
    return out, off


def _bin_encode(kind: int, body: bytes) -> bytes:
    payload = MAGIC + bytes([kind]) + body
    return payload + hashlib.sha256(payload).digest()


def _bin_decode(data: bytes, expect_kind: int) -> bytes:
    if len(data) < len(MAGIC) + 1 + 32:
        raise FormatError("file too short")
    payload, digest = data[:-32], data[-32:]
    if hashlib.sha256(payload).digest() != digest:
        raise FormatError("checksum mismatch")
    kind = payload[len(MAGIC)]
    if kind != expect_kind:
        found = _KIND_NAMES.get(kind, f"kind {kind}")
        raise FormatError(f"expected a {_KIND_NAMES[expect_kind]} file, found {found}")
    return payload[len(MAGIC) + 1 :]


# -- text bodies ------------------------------------------------


def _text_encode(kind: int, pairs: list[tuple[str, str]]) -> str:
    lines = ["gptrank: 1", f"kind: {_KIND_NAMES[kind]}"]
    lines += [f"{key}: {value}" for key, value in pairs]
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    return body + f"checksum: {digest}\n"


def _text_decode(text: str, expect_kind: int) -> list[tuple[str, str]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[-1].startswith("checksum:"):
        raise FormatError("missing checksum line")
    claimed = lines[-1].split(":", 1)[1].strip()
    body = "\n".join(lines[:-1]) + "\n"
    if hashlib.sha256(body.encode("utf-8")).hexdigest() != claimed:
        raise FormatError("checksum mismatch")
    pairs = []
    for ln in lines[:-1]:
        if ":" not in ln:
            raise FormatError(f"malformed line {ln!r}")
        key, value = ln.split(":", 1)
        pairs.append((key.strip(), value.strip()))
    if not pairs or pairs[0] != ("gptrank", "1"):
        raise FormatError("not a recognized text key file")
    if pairs[1] != ("kind", _KIND_NAMES[expect_kind]):
        raise FormatError(
            f"expected a {_KIND_NAMES[expect_kind]} file, found {pairs[1][1]}"
        )
    return pairs[2:]


def _pairs_to_scalars(pairs) -> dict:
    """Parse the leading scalar lines; stops at the first structural key."""
    values = {}
    rest = []
    structural = {"row", "block", "g", "matrix", "S", "P", "P_inv"}
    for i, (key, value) in enumerate(pairs):
        if key in structural:
            rest = pairs[i:]
            break
        if key == "modulus":
            values["modulus"] = tuple(int(tok) for tok in value.split())
        elif key == "mode":
            values["mode"] = value
        elif key == "x_rank":
            values["x_rank"] = None if value == "-" else int(value)
        else:
            values[key] = int(value)
    else:
        rest = []
    return values, rest


def _hex_row(ctx, vec) -> str:
    return " ".join(ctx.to_hex(v) for v in vec)


def _parse_hex_row(ctx, line: str, expect_len: int | None = None) -> list[int]:
    try:
        row = [ctx.from_hex(tok) for tok in line.split()]
    except ValueError as exc:
        raise FormatError(f"bad element: {exc}") from None
    if expect_len is not None and len(row) != expect_len:
        raise FormatError(f"expected {expect_len} elements per row, found {len(row)}")
    return row


def _scalar_pairs(params: GptParams) -> list[tuple[str, str]]:
    scalars = _params_scalars(params)
    out = []
    for key in _PARAM_KEYS:
        value = scalars[key]
        out.append((key, "-" if value is None else str(value)))
    out.append(("modulus", " ".join(str(c) for c in params.modulus)))
    return out


# -- json bodies ------------------------------------------------


def _json_encode(kind: int, payload: dict) -> str:
    doc = {"gptrank": 1, "kind": _KIND_NAMES[kind]}
    doc.update(payload)
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    doc["checksum"] = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _json_decode(text: str, expect_kind: int) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad json: {exc}") from None
    if not isinstance(doc, dict) or doc.get("gptrank") != 1:
        raise FormatError("not a recognized json key file")
    claimed = doc.pop("checksum", None)
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    if claimed != hashlib.sha256(canonical.encode("utf-8")).hexdigest():
        raise FormatError("checksum mismatch")
    if doc.get("kind") != _KIND_NAMES[expect_kind]:
        raise FormatError(
            f"expected a {_KIND_NAMES[expect_kind]} file, found {doc.get('kind')}"
        )
    return doc


def _json_params(params: GptParams) -> dict:
    payload = _params_scalars(params)
    payload["modulus"] = list(params.modulus)
    return payload


def _json_params_parse(doc: dict) -> GptParams:
    values = {key: doc.get(key) for key in _PARAM_KEYS}
    if any(values[key] is None for key in _PARAM_KEYS if key != "x_rank"):
        raise FormatError("missing parameter fields in json document")
    values["modulus"] = tuple(doc.get("modulus") or ())
    return _params_from_scalars(values)


# -- public key ------------------------------------------------


def save_public_key(path, pub: GptPublicKey, fmt: str = "bin") -> None:
    fmt = _normalize_fmt(fmt)
    params = pub.params
    ctx = params.field()
    if fmt == "bin":
        body = _pack_params(params) + _pack_matrix(ctx, pub.matrix)
        Path(path).write_bytes(_bin_encode(_KIND_PUBLIC, body))
        return
    if fmt == "hex":
        pairs = _scalar_pairs(params)
        pairs += [("row", _hex_row(ctx, row)) for row in pub.matrix]
        Path(path).write_text(_text_encode(_KIND_PUBLIC, pairs), encoding="utf-8")
        return
    payload = {
        "params": _json_params(params),
        "matrix": [_hex_row(ctx, row) for row in pub.matrix],
    }
    Path(path).write_text(_json_encode(_KIND_PUBLIC, payload), encoding="utf-8")


def load_public_key(path) -> GptPublicKey:
    data = Path(path).read_bytes()
    fmt = sniff_format(data)
    if fmt == "bin":
        body = _bin_decode(data, _KIND_PUBLIC)
        params, off = _unpack_params(body, 0)
        ctx = params.field()
        matrix, off = _unpack_matrix(ctx, body, off, params.pub_rows, params.pub_cols)
        if off != len(body):
            raise FormatError("trailing bytes after public matrix")
    elif fmt == "hex":
        pairs = _text_decode(data.decode("utf-8"), _KIND_PUBLIC)
        values, rest = _pairs_to_scalars(pairs)
        params = _params_from_scalars(values)
        ctx = params.field()
        rows = [value for key, value in rest if key == "row"]
        if len(rows) != params.pub_rows:
            raise FormatError(f"expected {params.pub_rows} matrix rows, found {len(rows)}")
        matrix = [_parse_hex_row(ctx, row, params.pub_cols) for row in rows]
    else:
        doc = _json_decode(data.decode("utf-8"), _KIND_PUBLIC)
        params = _json_params_parse(doc.get("params") or {})
        ctx = params.field()
        rows = doc.get("matrix")
        if not isinstance(rows, list) or len(rows) != params.pub_rows:
            raise FormatError("bad or missing public matrix")
        matrix = [_parse_hex_row(ctx, row, params.pub_cols) for row in rows]
    return GptPublicKey(params=params, matrix=matrix)


# -- private key ------------------------------------------------


def _private_matrix_dims(params: GptParams):
    L = params.pub_cols
    return (params.pub_rows, params.k), (L, L)


def save_private_key(path, sk: GptPrivateKey, fmt: str = "bin") -> None:
    fmt = _normalize_fmt(fmt)
    params = sk.params
    ctx = params.field()
    if fmt == "bin":
        body = _pack_params(params)
        body += _pack_elems(ctx, sk.code.g)
        body += _pack_matrix(ctx, sk.S)
        body += _pack_matrix(ctx, sk.P)
        body += _pack_matrix(ctx, sk.P_inv)
        Path(path).write_bytes(_bin_encode(_KIND_PRIVATE, body))
        return
    if fmt == "hex":
        pairs = _scalar_pairs(params)
        pairs.append(("g", _hex_row(ctx, sk.code.g)))
        for name, M in (("S", sk.S), ("P", sk.P), ("P_inv", sk.P_inv)):
            pairs.append((name, ""))
            pairs += [("row", _hex_row(ctx, row)) for row in M]
        Path(path).write_text(_text_encode(_KIND_PRIVATE, pairs), encoding="utf-8")
        return
    payload = {
        "params": _json_params(params),
        "g": _hex_row(ctx, sk.code.g),
        "S": [_hex_row(ctx, row) for row in sk.S],
        "P": [_hex_row(ctx, row) for row in sk.P],
        "P_inv": [_hex_row(ctx, row) for row in sk.P_inv],
    }
    Path(path).write_text(_json_encode(_KIND_PRIVATE, payload), encoding="utf-8")


def _rebuild_private(params: GptParams, g, S, P, P_inv) -> GptPrivateKey:
    ctx = params.field()
    (s_rows, s_cols), (L, _) = _private_matrix_dims(params)
    if len(S) != s_rows or any(len(row) != s_cols for row in S):
        raise FormatError("row scrambler has the wrong shape")
    for M, name in ((P, "P"), (P_inv, "P_inv")):
        if len(M) != L or any(len(row) != L for row in M):
            raise FormatError(f"column scrambler {name} has the wrong shape")
    if mat_mul(ctx, P, P_inv) != identity_matrix(L):
        raise FormatError("column scrambler pair is not mutually inverse")
    try:
        code = GabidulinCode(ctx, g, params.k)
    except ParameterError as exc:
        raise FormatError(f"invalid code vector: {exc}") from None
    if params.variant == Variant.RECTANGULAR_S:
        S_inv = None
    else:
        try:
            S_inv = mat_inv(ctx, S)
        except ValueError:
            raise FormatError("row scrambler is singular") from None
    return GptPrivateKey(params=params, code=code, S=S, S_inv=S_inv, P=P, P_inv=P_inv)


def load_private_key(path) -> GptPrivateKey:
    data = Path(path).read_bytes()
    fmt = sniff_format(data)
    if fmt == "bin":
        body = _bin_decode(data, _KIND_PRIVATE)
        params, off = _unpack_params(body, 0)
        ctx = params.field()
        (s_rows, s_cols), (L, _) = _private_matrix_dims(params)
        g, off = _unpack_elems(ctx, body, off, params.n)
        S, off = _unpack_matrix(ctx, body, off, s_rows, s_cols)
        P, off = _unpack_matrix(ctx, body, off, L, L)
        P_inv, off = _unpack_matrix(ctx, body, off, L, L)
        if off != len(body):
            raise FormatError("trailing bytes after private key data")
    elif fmt == "hex":
        pairs = _text_decode(data.decode("utf-8"), _KIND_PRIVATE)
        values, rest = _pairs_to_scalars(pairs)
        params = _params_from_scalars(values)
        ctx = params.field()
        g = None
        sections: dict[str, list] = {"S": [], "P": [], "P_inv": []}
        current = None
        for key, value in rest:
            if key == "g":
                g = _parse_hex_row(ctx, value, params.n)
            elif key in sections:
                current = key
            elif key == "row":
                if current is None:
                    raise FormatError("matrix row outside any section")
                sections[current].append(_parse_hex_row(ctx, value))
            else:
                raise FormatError(f"unexpected key {key!r} in private key file")
        if g is None:
            raise FormatError("missing code vector g")
        S, P, P_inv = sections["S"], sections["P"], sections["P_inv"]
    else:
        doc = _json_decode(data.decode("utf-8"), _KIND_PRIVATE)
        params = _json_params_parse(doc.get("params") or {})
        ctx = params.field()
        try:
            g = _parse_hex_row(ctx, doc["g"], params.n)
            S = [_parse_hex_row(ctx, row) for row in doc["S"]]
            P = [_parse_hex_row(ctx, row) for row in doc["P"]]
            P_inv = [_parse_hex_row(ctx, row) for row in doc["P_inv"]]
        except (KeyError, TypeError):
            raise FormatError("missing private key members") from None
    return _rebuild_private(params, g, S, P, P_inv)


# -- ciphertext ------------------------------------------------


def save_ciphertext(path, ct: CiphertextBundle, fmt: str = "bin") -> None:
    fmt = _normalize_fmt(fmt)
    ctx = ct.field()
    if any(len(b) != ct.block_len for b in ct.blocks):
        raise ParameterError("ciphertext blocks disagree with block_len")
    if fmt == "bin":
        body = struct.pack(">IH", ct.q, ct.N)
        body += struct.pack(">H", len(ct.modulus))
        body += b"".join(struct.pack(">I", c) for c in ct.modulus)
        body += struct.pack(">IIQ", ct.block_len, len(ct.blocks), ct.msg_len)
        for b in ct.blocks:
            body += _pack_elems(ctx, b)
        Path(path).write_bytes(_bin_encode(_KIND_CIPHERTEXT, body))
        return
    if fmt == "hex":
        pairs = [
            ("q", str(ct.q)),
            ("N", str(ct.N)),
            ("modulus", " ".join(str(c) for c in ct.modulus)),
            ("block_len", str(ct.block_len)),
            ("msg_len", str(ct.msg_len)),
        ]
        pairs += [("block", _hex_row(ctx, b)) for b in ct.blocks]
        Path(path).write_text(_text_encode(_KIND_CIPHERTEXT, pairs), encoding="utf-8")
        return
    payload = {
        "q": ct.q,
        "N": ct.N,
        "modulus": list(ct.modulus),
        "block_len": ct.block_len,
        "msg_len": ct.msg_len,
        "blocks": [_hex_row(ctx, b) for b in ct.blocks],
    }
    Path(path).write_text(_json_encode(_KIND_CIPHERTEXT, payload), encoding="utf-8")


def _ciphertext_field(q, N, modulus):
    try:
        return get_field(q, N, tuple(modulus))
    except (ParameterError, ValueError) as exc:
        raise FormatError(f"ciphertext carries an invalid field: {exc}") from None


def load_ciphertext(path) -> CiphertextBundle:
    data = Path(path).read_bytes()
    fmt = sniff_format(data)
    if fmt == "bin":
        body = _bin_decode(data, _KIND_CIPHERTEXT)
        try:
            q, N = struct.unpack_from(">IH", body, 0)
            off = 6
            (mod_len,) = struct.unpack_from(">H", body, off)
            off += 2
            modulus = struct.unpack_from(f">{mod_len}I", body, off)
            off += 4 * mod_len
            block_len, count, msg_len = struct.unpack_from(">IIQ", body, off)
            off += 16
        except struct.error as exc:
            raise FormatError(f"truncated ciphertext header: {exc}") from None
        ctx = _ciphertext_field(q, N, modulus)
        blocks, off = _unpack_matrix(ctx, body, off, count, block_len)
        if off != len(body):
            raise FormatError("trailing bytes after ciphertext blocks")
    elif fmt == "hex":
        pairs = _text_decode(data.decode("utf-8"), _KIND_CIPHERTEXT)
        values: dict = {}
        block_lines = []
        for key, value in pairs:
            if key == "block":
                block_lines.append(value)
            elif key == "modulus":
                values["modulus"] = tuple(int(tok) for tok in value.split())
            else:
                values[key] = int(value)
        try:
            q, N = values["q"], values["N"]
            modulus = values["modulus"]
            block_len, msg_len = values["block_len"], values["msg_len"]
        except KeyError as exc:
            raise FormatError(f"missing ciphertext field {exc}") from None
        ctx = _ciphertext_field(q, N, modulus)
        blocks = [_parse_hex_row(ctx, line, block_len) for line in block_lines]
    else:
        doc = _json_decode(data.decode("utf-8"), _KIND_CIPHERTEXT)
        try:
            q, N = doc["q"], doc["N"]
            modulus = tuple(doc["modulus"])
            block_len, msg_len = doc["block_len"], doc["msg_len"]
            block_lines = doc["blocks"]
        except (KeyError, TypeError):
            raise FormatError("missing ciphertext members") from None
        ctx = _ciphertext_field(q, N, modulus)
        blocks = [_parse_hex_row(ctx, line, block_len) for line in block_lines]
    if msg_len < 0:
        raise FormatError("negative message length")
    return CiphertextBundle(
        q=q,
        N=N,
        modulus=tuple(modulus),
        block_len=block_len,
        msg_len=msg_len,
        blocks=blocks,
    )
