"""
This module gathers utility functions that ease the writing of visitors over
documents, worlds and reports.
"""
from functools import singledispatch, update_wrapper


def dispatch(func):
    """Single dispatch on the first argument after ``self``.

    Usage in a class whose ``render`` method must vary on the rendered value::

        class Renderer(object):
            @dispatch
            def render(self, value):
                raise TypeError(value)

            @render.register(ClassDecl)
            def _(self, value):
                return f'class {value.name}'
    """
    dispatcher = singledispatch(func)

    def wrapper(*args, **kw):
        return dispatcher.dispatch(args[1].__class__)(*args, **kw)

    wrapper.register = dispatcher.register
    wrapper.registry = dispatcher.registry
    update_wrapper(wrapper, func)
    return wrapper
