"""Text pattern helpers for spotting personal data in study files."""

import re

EMAIL_RE = re.compile(r"[A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,}")
# at least 9 digits with optional separators (ISO dates have 8)
PHONE_RE = re.compile(r"(?<![\w/])\+?\d(?:[\s.\-()]*\d){8,}(?![\w/:])")
USER_PATH_RE = re.compile(
    r"(?:/home/|/Users/|[A-Za-z]:\\Users\\|[A-Za-z]:/Users/)([^/\\\s\"'<>]+)"
)
# two or more capitalised words, or first.last / first_last in lower case
NAME_LIKE_RE = re.compile(
    r"^(?:[A-Z][a-z\u00C0-\u024F'\-]+(?:[ ._][A-Z][a-z\u00C0-\u024F'\-]+)+"
    r"|[a-z\u00C0-\u024F]{2,}[._][a-z\u00C0-\u024F]{2,})$"
)

# directories that are not user accounts
_SYSTEM_USERS = {"shared", "public", "default", "all users", "runner", "user", "username", "<user>"}


def _unique(items: list[str]) -> list[str]:
    # Deduplicate while preserving order
    seen: set[str] = set()
    unique: list[str] = []
    for item in items:
        if item not in seen:
            seen.add(item)
            unique.append(item)
    return unique


def extract_emails(text: str) -> list[str]:
    return _unique(EMAIL_RE.findall(text or ""))


def extract_phone_numbers(text: str) -> list[str]:
    return _unique(m.group(0).strip() for m in PHONE_RE.finditer(text or ""))


def extract_user_names_from_paths(text: str) -> list[str]:
    """User names embedded in home-directory paths (/home/<u>/, C:\\Users\\<u>\\)."""
    names = [m.group(1) for m in USER_PATH_RE.finditer(text or "")]
    return _unique([n for n in names if n.lower() not in _SYSTEM_USERS])


def looks_like_name(text: str) -> bool:
    return bool(NAME_LIKE_RE.match((text or "").strip()))
