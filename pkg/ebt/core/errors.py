from __future__ import annotations

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


class EbtError(Exception):
    """Base error carrying a human-readable ``detail`` and a process exit code."""

    exit_code: int = EXIT_USAGE

    def __init__(self, detail: str, *, exit_code: int | None = None) -> None:
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ParseError(EbtError):
    def __init__(self, detail: str, *, text: str, position: int) -> None:
        super().__init__(f"{detail} (at position {position} of {text!r})")
        self.text = text
        self.position = position


class InvalidInputError(EbtError):
    pass


class GroupMismatchError(EbtError):
    pass
