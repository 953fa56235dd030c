from __future__ import annotations

import doctest
from contextlib import contextmanager
from io import StringIO
from pathlib import Path
from tempfile import NamedTemporaryFile
from typing import Any, Callable, Iterator, TextIO


@contextmanager
def file_like(
    file_type: type[str] | type[Path] | type[StringIO],
) -> Iterator[str | Path | TextIO]:
    if file_type is str:
        with NamedTemporaryFile('w', suffix='.csv') as f:
            yield f.name
    elif file_type is Path:
        with NamedTemporaryFile('w', suffix='.csv') as f:
            yield Path(f.name)
    elif file_type is StringIO:
        yield StringIO(newline='')
    else:
        raise TypeError


def rewind(file: str | Path | TextIO) -> None:
    if isinstance(file, StringIO):
        file.seek(0)


def docstring_failures(obj: Callable[..., Any]) -> int:
    """Runs the examples of a docstring in an empty namespace and returns the failures."""
    runner = doctest.DocTestRunner(optionflags=doctest.ELLIPSIS)
    for test in doctest.DocTestFinder().find(obj, globs={}):
        runner.run(test)
    return runner.summarize(verbose=False).failed
