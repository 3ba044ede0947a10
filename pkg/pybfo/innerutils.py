"""
Name handling shared by the ``.bfo`` parser and serializer.
"""
import re


IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z0-9_-]*')


def is_identifier(name):
    return IDENTIFIER.fullmatch(name) is not None


def quote(name):
    """Writes ``name`` the way the ``.bfo`` grammar reads it back: bare when
    it is an identifier, double-quoted otherwise.
    """
    if is_identifier(name):
        return name
    if '"' in name or '\n' in name or not name:
        raise ValueError(f'{name!r} cannot be written as a name')
    return f'"{name}"'
