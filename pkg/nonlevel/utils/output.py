import json
import sys
from typing import Any, Dict, Iterable, List, Optional, TextIO


class Output:
    """
    Writes command results to stdout, either as human-readable lines or as
    one versioned JSON document. Logging never goes through here.
    """

    def __init__(self, json_mode: bool = False, schema_version: int = 1, stream: Optional[TextIO] = None):
        self.json_mode = json_mode
        self.schema_version = schema_version
        self._stream = stream

    @property
    def stream(self) -> TextIO:
        # Resolved late so redirected stdout (tests, pipes) is honored
        return self._stream or sys.stdout

    def line(self, text: str = ""):
        """Print a human-readable line; ignored in JSON mode."""
        if not self.json_mode:
            print(text, file=self.stream)

    def lines(self, texts: Iterable[str]):
        for text in texts:
            self.line(text)

    def document(self, command: str, results: List[Dict[str, Any]], **extra: Any):
        """Print the JSON document for a command; ignored in text mode."""
        if not self.json_mode:
            return
        payload = {"schema_version": self.schema_version, "command": command, "results": results}
        payload.update(extra)
        print(json.dumps(payload, indent=2), file=self.stream)
