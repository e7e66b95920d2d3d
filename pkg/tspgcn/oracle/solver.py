import logging

logger = logging.getLogger(__name__)


class Solver(object):
    """A tour construction method the benchmark harness can dispatch to."""

    def __init__(self) -> None:
        super().__init__()
        self.name = ""
        self.exact = False

    def solve(self, instance):
        raise NotImplementedError(f"{type(self).__name__} does not implement solve()")

    def to_dict(self):
        return {"name": self.name, "exact": self.exact}
