"""Email and public-IPv4 replacement.

Phone numbers are deliberately left alone (regexes for them misfire far too
often on ordinary numbers).
"""
from __future__ import annotations

import ipaddress
import random
import re
from dataclasses import dataclass

EMAIL_SENTINELS = ("email@example.com", "firstname.lastname@example.com")
IP_SENTINELS = (
    "22.214.171.124",
    "126.96.36.199",
    "188.8.131.52",
    "184.108.40.206",
    "220.127.116.11",
    "18.104.22.168",
)

EMAIL_RE = re.compile(r"\b[A-Za-z0-9._%+-]+@(?:[A-Za-z0-9-]+\.)+[A-Za-z]{2,}\b")
_OCTET = r"(?:25[0-5]|2[0-4][0-9]|1[0-9]{2}|[1-9]?[0-9])"
# not preceded by a digit or "digit.", not followed by a digit or ".digit"
IPV4_RE = re.compile(rf"(?<![0-9])(?<![0-9]\.)\b{_OCTET}(?:\.{_OCTET}){{3}}\b(?!\.?[0-9])")

NON_PUBLIC_NETWORKS = tuple(
    ipaddress.ip_network(n)
    for n in (
        "0.0.0.0/8",
        "10.0.0.0/8",
        "127.0.0.0/8",
        "169.254.0.0/16",
        "172.16.0.0/12",
        "192.168.0.0/16",
        "224.0.0.0/3",  # multicast 224/4 and reserved 240/4
    )
)


@dataclass(frozen=True)
class PiiReport:
    emails_replaced: int = 0
    ips_replaced: int = 0

    def __add__(self, other: "PiiReport") -> "PiiReport":
        return PiiReport(self.emails_replaced + other.emails_replaced, self.ips_replaced + other.ips_replaced)


def is_public_ipv4(addr: str) -> bool:
    ip = ipaddress.IPv4Address(addr)
    return not any(ip in net for net in NON_PUBLIC_NETWORKS)


def _pick(options: tuple[str, ...], seed: int, kind: str, ordinal: int) -> str:
    return options[random.Random(f"{seed}:{kind}:{ordinal}").randrange(len(options))]


def scrub(text: str, seed: int = 0) -> tuple[str, PiiReport]:
    """Replace emails and public IPv4 addresses with sentinel values.

    The sentinel for the i-th replaced match depends only on ``seed`` and
    ``i``. Matches that already are sentinels are left in place, which makes
    ``scrub`` idempotent.
    """
    if "@" not in text and "." not in text:
        return text, PiiReport()
    counts = {"email": 0, "ip": 0}

    def sub_email(m: re.Match) -> str:
        if m.group(0) in EMAIL_SENTINELS:
            return m.group(0)
        counts["email"] += 1
        return _pick(EMAIL_SENTINELS, seed, "email", counts["email"] - 1)

    def sub_ip(m: re.Match) -> str:
        found = m.group(0)
        if found in IP_SENTINELS or not is_public_ipv4(found):
            return found
        counts["ip"] += 1
        return _pick(IP_SENTINELS, seed, "ip", counts["ip"] - 1)

    out = EMAIL_RE.sub(sub_email, text) if "@" in text else text
    out = IPV4_RE.sub(sub_ip, out)
    return out, PiiReport(counts["email"], counts["ip"])
