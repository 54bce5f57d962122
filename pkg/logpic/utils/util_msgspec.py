"""
Helpers to turn msgspec structs and ``__json__`` objects into plain data.
"""
import msgspec
import orjson


def asdict(struct):
    """
    Mirror dataclasses.asdict

    Example:
        >>> from logpic.utils.util_msgspec import asdict
        >>> from logpic.components import ComponentClass
        >>> asdict(ComponentClass(2, (1,)))
        {'degree': 2, 'torsion': [1]}
    """
    import kwutil
    return kwutil.Json.loads(msgspec.json.encode(struct), backend='orjson')


def _default(obj):
    if hasattr(obj, '__json__'):
        return obj.__json__()
    if isinstance(obj, msgspec.Struct):
        return asdict(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f'Cannot serialize {type(obj)!r}')


def dumps(data) -> bytes:
    """
    Deterministic JSON: sorted keys, two-space indent, trailing newline.

    Example:
        >>> from logpic.utils.util_msgspec import dumps
        >>> from logpic.components import ComponentClass
        >>> print(dumps({'b': ComponentClass(1), 'a': (1, 2)}).decode())
        {
          "a": [
            1,
            2
          ],
          "b": {
            "degree": 1,
            "torsion": []
          }
        }
    """
    opts = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE
    return orjson.dumps(data, default=_default, option=opts)
