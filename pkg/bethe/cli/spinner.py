"""Terminal spinner for long sweeps."""

import sys

import typer


class Spinner:
    """Animated spinner with message updates, written to stderr."""

    FRAMES = ["⠋", "⠙", "⠹", "⠸", "⠼", "⠴", "⠦", "⠧", "⠇", "⠏"]

    def __init__(self, label: str = ""):
        self.tick_count = 0
        self.label = label

    def update(self, message: str) -> None:
        frame = self.FRAMES[self.tick_count % len(self.FRAMES)]
        sys.stderr.write(f"\r{frame} {message}")
        sys.stderr.flush()
        self.tick_count += 1

    def progress(self, done: int, total: int) -> None:
        self.update(f"{self.label} {done}/{total}")

    def finish(self, message: str = "Done") -> None:
        sys.stderr.write(f"\r✓ {message}".ljust(40) + "\n")
        sys.stderr.flush()


def spinner_for(ctx: typer.Context, label: str) -> Spinner | None:
    """A spinner unless output is quiet or JSON."""
    obj = ctx.obj or {}
    if obj.get("quiet_output") or obj.get("json_output"):
        return None
    return Spinner(label)
