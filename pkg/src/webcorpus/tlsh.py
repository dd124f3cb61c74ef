"""TLSH locality-sensitive digests.

A from-scratch implementation of the TLSH scheme: a 5-byte sliding window
feeds Pearson-hashed byte triplets into buckets, bucket counts are encoded as
quartile codes, and a header carries a rolling checksum, a log-scaled length
and two quartile ratios. The default parameters are 256 buckets with a 3-byte
checksum; 128 buckets / 1-byte checksum (the common library default) is also
supported, chiefly for cross-checking.

Digests are rendered as lowercase hex without the ``T1`` version prefix.
"""
from __future__ import annotations

from dataclasses import dataclass

WINDOW = 5
MIN_LENGTH = 50
LENGTH_MULT = 12
QRATIO_MULT = 12

# Pearson permutation table
V_TABLE = (
    1, 87, 49, 12, 176, 178, 102, 166, 121, 193, 6, 84, 249, 230, 44, 163,
    14, 197, 213, 181, 161, 85, 218, 80, 64, 239, 24, 226, 236, 142, 38, 200,
    110, 177, 104, 103, 141, 253, 255, 50, 77, 101, 81, 18, 45, 96, 31, 222,
    25, 107, 190, 70, 86, 237, 240, 34, 72, 242, 20, 214, 244, 227, 149, 235,
    97, 234, 57, 22, 60, 250, 82, 175, 208, 5, 127, 199, 111, 62, 135, 248,
    174, 169, 211, 58, 66, 154, 106, 195, 245, 171, 17, 187, 182, 179, 0, 243,
    132, 56, 148, 75, 128, 133, 158, 100, 130, 126, 91, 13, 153, 246, 216, 219,
    119, 68, 223, 78, 83, 88, 201, 99, 122, 11, 92, 32, 136, 114, 52, 10,
    138, 30, 48, 183, 156, 35, 61, 26, 143, 74, 251, 94, 129, 162, 63, 152,
    170, 7, 115, 167, 241, 206, 3, 150, 55, 59, 151, 220, 90, 53, 23, 131,
    125, 173, 15, 238, 79, 95, 89, 16, 105, 137, 225, 224, 217, 160, 37, 123,
    118, 73, 2, 157, 46, 116, 9, 145, 134, 228, 207, 212, 202, 215, 69, 229,
    27, 188, 67, 124, 168, 252, 42, 4, 29, 108, 21, 247, 19, 205, 39, 203,
    233, 40, 186, 147, 198, 192, 155, 33, 164, 191, 98, 204, 165, 180, 117, 76,
    140, 36, 210, 172, 41, 54, 159, 8, 185, 232, 113, 196, 231, 47, 146, 120,
    51, 65, 28, 144, 254, 221, 93, 189, 194, 139, 112, 43, 71, 109, 184, 209,
)

# upper bounds of the log-scaled length buckets
TOPVAL = (
    1, 2, 3, 5, 7, 11, 17, 25, 38, 57,
    86, 129, 194, 291, 437, 656, 854, 1110, 1443, 1876,
    2439, 3171, 3475, 3823, 4205, 4626, 5088, 5597, 6157, 6772,
    7450, 8195, 9014, 9916, 10907, 11998, 13198, 14518, 15970, 17567,
    19323, 21256, 23382, 25720, 28292, 31121, 34233, 37656, 41422, 45564,
    50121, 55133, 60646, 66711, 73382, 80721, 88793, 97672, 107439, 118183,
    130002, 143002, 157302, 173032, 190335, 209369, 230306, 253337, 278670, 306538,
    337191, 370911, 408002, 448802, 493682, 543050, 597356, 657091, 722800, 795081,
    874589, 962048, 1058252, 1164078, 1280486, 1408534, 1549388, 1704327, 1874759, 2062236,
    2268459, 2495305, 2744836, 3019320, 3321252, 3653374, 4018711, 4420582, 4862641, 5348905,
    5883796, 6472176, 7119394, 7831333, 8614467, 9475909, 10423501, 11465851, 12612437, 13873681,
    15261050, 16787154, 18465870, 20312458, 22343706, 24578077, 27035886, 29739474, 32713425, 35984770,
    39583245, 43541573, 47895730, 52685306, 57953837, 63749221, 70124148, 77136564, 84850228, 93335252,
    102668779, 112935659, 124229227, 136652151, 150317384, 165349128, 181884040, 200072456, 220079703, 242087671,
    266296456, 292926096, 322218735, 354440623, 389884688, 428873168, 471760495, 518936559, 570830240, 627913311,
    690704607, 759775136, 835752671, 919327967, 1011260767, 1112386880, 1223623232, 1345985727, 1480584256, 1628642751,
    1791507135, 1970657856, 2167723648, 2384496256, 2622945920, 2885240448, 3173764736, 3491141248, 3840255616, 4224281216,
)

_BUCKET_SALTS = (49, 12, 178, 166, 84, 230)


class DigestLayoutError(ValueError):
    pass


@dataclass(frozen=True)
class DigestLayout:
    buckets: int = 256
    checksum_len: int = 3

    def __post_init__(self):
        if self.buckets not in (128, 256) or self.checksum_len not in (1, 3):
            raise ValueError("supported layouts: 128 or 256 buckets, 1- or 3-byte checksum")

    @property
    def code_size(self) -> int:
        return self.buckets // 4

    @property
    def hex_length(self) -> int:
        return 2 * (self.checksum_len + 2 + self.code_size)


DEFAULT_LAYOUT = DigestLayout()


def _pair_diff(a: int, b: int) -> int:
    d = abs(a - b)
    return 6 if d == 3 else d


def _byte_diff(x: int, y: int) -> int:
    return sum(_pair_diff((x >> s) & 3, (y >> s) & 3) for s in (0, 2, 4, 6))


BIT_PAIRS_DIFF = tuple(tuple(_byte_diff(x, y) for y in range(256)) for x in range(256))


def _pearson(salt: int, i: int, j: int, k: int) -> int:
    v = V_TABLE
    return v[v[v[v[salt] ^ i] ^ j] ^ k]


def length_code(n: int) -> int:
    bottom, top, idx = 0, 170, 85
    while True:
        if idx == 0:
            return 0
        if TOPVAL[idx - 1] < n <= TOPVAL[idx]:
            return idx
        if n < TOPVAL[idx]:
            top = idx - 1
        else:
            bottom = idx + 1
        idx = (bottom + top) // 2


def _swap(b: int) -> int:
    return ((b & 0x0F) << 4) | (b >> 4)


@dataclass(frozen=True)
class Digest:
    checksum: tuple[int, ...]
    lvalue: int
    q1ratio: int
    q2ratio: int
    code: tuple[int, ...]

    @property
    def layout(self) -> DigestLayout:
        return DigestLayout(buckets=4 * len(self.code), checksum_len=len(self.checksum))

    @property
    def hex(self) -> str:
        raw = [_swap(c) for c in self.checksum]
        raw.append(_swap(self.lvalue))
        raw.append((self.q1ratio << 4) | self.q2ratio)
        raw.extend(reversed(self.code))
        return bytes(raw).hex()

    def __str__(self) -> str:
        return self.hex

    @classmethod
    def from_hex(cls, text: str, layout: DigestLayout = DEFAULT_LAYOUT) -> "Digest":
        if text[:2] in ("T1", "t1"):
            text = text[2:]
        if len(text) != layout.hex_length:
            raise DigestLayoutError(f"expected {layout.hex_length} hex chars, got {len(text)}")
        try:
            raw = bytes.fromhex(text)
        except ValueError as exc:
            raise DigestLayoutError(f"not a hex digest: {text[:16]}...") from exc
        c = layout.checksum_len
        return cls(
            checksum=tuple(_swap(b) for b in raw[:c]),
            lvalue=_swap(raw[c]),
            q1ratio=raw[c + 1] >> 4,
            q2ratio=raw[c + 1] & 0x0F,
            code=tuple(reversed(raw[c + 2 :])),
        )


def bucket_counts(data: bytes, layout: DigestLayout = DEFAULT_LAYOUT) -> tuple[list[int], tuple[int, ...]]:
    """Raw triplet histogram (all 256 slots) and the rolling checksum."""
    buckets = [0] * 256
    checksum = [0] * layout.checksum_len
    v = V_TABLE
    for i in range(WINDOW - 1, len(data)):
        a0, a1, a2, a3, a4 = data[i], data[i - 1], data[i - 2], data[i - 3], data[i - 4]
        checksum[0] = v[v[v[1 ^ a0] ^ a1] ^ checksum[0]]
        for k in range(1, layout.checksum_len):
            checksum[k] = _pearson(checksum[k - 1], a0, a1, checksum[k])
        buckets[v[v[v[49 ^ a0] ^ a1] ^ a2]] += 1
        buckets[v[v[v[12 ^ a0] ^ a1] ^ a3]] += 1
        buckets[v[v[v[178 ^ a0] ^ a2] ^ a3]] += 1
        buckets[v[v[v[166 ^ a0] ^ a2] ^ a4]] += 1
        buckets[v[v[v[84 ^ a0] ^ a1] ^ a4]] += 1
        buckets[v[v[v[230 ^ a0] ^ a3] ^ a4]] += 1
    return buckets, tuple(checksum)


def digest_bytes(data: bytes, layout: DigestLayout = DEFAULT_LAYOUT) -> Digest | None:
    if len(data) < MIN_LENGTH:
        return None
    counts, checksum = bucket_counts(data, layout)
    eff = counts[: layout.buckets]
    ordered = sorted(eff)
    n = layout.buckets
    q1, q2, q3 = ordered[n // 4 - 1], ordered[n // 2 - 1], ordered[n - n // 4 - 1]
    if q3 == 0:
        return None
    if sum(1 for c in eff if c > 0) <= n // 2:
        return None
    code = []
    for i in range(layout.code_size):
        h = 0
        for j in range(4):
            k = eff[4 * i + j]
            if k > q3:
                h |= 3 << (2 * j)
            elif k > q2:
                h |= 2 << (2 * j)
            elif k > q1:
                h |= 1 << (2 * j)
        code.append(h)
    return Digest(
        checksum=checksum,
        lvalue=length_code(len(data)),
        q1ratio=(q1 * 100 // q3) % 16,
        q2ratio=(q2 * 100 // q3) % 16,
        code=tuple(code),
    )


def compute_digest(text: str, layout: DigestLayout = DEFAULT_LAYOUT) -> str | None:
    """Hex digest of the UTF-8 bytes of ``text``; ``None`` if too short or too uniform."""
    d = digest_bytes(text.encode("utf-8"), layout)
    return None if d is None else d.hex


def _mod_diff(x: int, y: int, r: int) -> int:
    d = abs(x - y)
    return min(d, r - d)


def digest_distance(a, b, include_length: bool = True) -> int:
    """TLSH distance between two digests (hex strings or :class:`Digest`)."""
    if isinstance(a, str):
        a = Digest.from_hex(a, _layout_for_hex(a))
    if isinstance(b, str):
        b = Digest.from_hex(b, _layout_for_hex(b))
    if a.layout != b.layout:
        raise DigestLayoutError(f"cannot compare {a.layout} with {b.layout}")
    diff = 0
    if include_length:
        ld = _mod_diff(a.lvalue, b.lvalue, 256)
        diff += ld if ld <= 1 else ld * LENGTH_MULT
    for x, y in ((a.q1ratio, b.q1ratio), (a.q2ratio, b.q2ratio)):
        qd = _mod_diff(x, y, 16)
        diff += qd if qd <= 1 else (qd - 1) * QRATIO_MULT
    if a.checksum != b.checksum:
        diff += 1
    diff += sum(BIT_PAIRS_DIFF[x][y] for x, y in zip(a.code, b.code))
    return diff


def _layout_for_hex(text: str) -> DigestLayout:
    n = len(text) - (2 if text[:2] in ("T1", "t1") else 0)
    for layout in (DigestLayout(256, 3), DigestLayout(256, 1), DigestLayout(128, 3), DigestLayout(128, 1)):
        if layout.hex_length == n:
            return layout
    raise DigestLayoutError(f"no digest layout has {n} hex characters")
