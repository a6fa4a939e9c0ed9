"""Witness reports returned by the axiom checkers."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: object
    detail: str = ""

    def as_dict(self):
        return {"axiom": self.axiom, "witness": _plain(self.witness), "detail": self.detail}


@dataclass
class Report:
    """A list of failed axioms; an empty report means every check passed."""

    subject: str = ""
    failures: list = field(default_factory=list)
    checked: list = field(default_factory=list)

    def fail(self, axiom, witness, detail=""):
        self.failures.append(Failure(axiom, witness, detail))

    def ran(self, axiom):
        self.checked.append(axiom)

    def extend(self, other):
        self.failures.extend(other.failures)
        self.checked.extend(other.checked)
        return self

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def axioms_failed(self):
        return [f.axiom for f in self.failures]

    def summary(self):
        if self.ok:
            return f"{self.subject}: valid ({len(self.checked)} checks)"
        lines = [f"{self.subject}: {len(self.failures)} failure(s)"]
        lines += [f"  {f.axiom} at {f.witness}" + (f": {f.detail}" if f.detail else "") for f in self.failures]
        return "\n".join(lines)


def _plain(x):
    """JSON-friendly copy of a witness."""
    from fractions import Fraction

    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x
