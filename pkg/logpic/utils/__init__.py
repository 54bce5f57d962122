__autogen__ = (
    """
    mkinit ~/code/logpic/logpic/utils/__init__.py --lazy-loader --noattrs -w
    """)

import lazy_loader


__getattr__, __dir__, __all__ = lazy_loader.attach(
    __name__,
    submodules={
        'util_iterable',
        'util_logging',
        'util_msgspec',
    },
    submod_attrs={},
)

__all__ = ['util_iterable', 'util_logging', 'util_msgspec']
