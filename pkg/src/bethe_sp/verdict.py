from dataclasses import dataclass, field


@dataclass
class Verdict:
    """Outcome of one exact identity check.

    ``lhs``/``rhs`` hold the compared values, ``witness`` whatever is needed
    to reproduce a failure in isolation, and ``parts`` nested sub-checks.
    """

    name: str
    passed: bool
    lhs: object = None
    rhs: object = None
    witness: dict = field(default_factory=dict)
    parts: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    @classmethod
    def compare(cls, name, lhs, rhs, **witness):
        return cls(name, lhs == rhs, lhs, rhs, witness)

    @classmethod
    def combine(cls, name, parts, **witness):
        parts = list(parts)
        return cls(name, all(p.passed for p in parts), witness=witness, parts=parts)

    def failures(self):
        """Leaf verdicts that did not pass."""
        if not self.parts:
            return [] if self.passed else [self]
        out = []
        for p in self.parts:
            out.extend(p.failures())
        if not self.passed and not out:
            out.append(self)
        return out

    def to_dict(self):
        def text(v):
            if v is None:
                return None
            if isinstance(v, (list, tuple)):
                return [text(x) for x in v]
            return str(v)

        out = {"name": self.name, "passed": self.passed}
        if self.lhs is not None or self.rhs is not None:
            out["lhs"] = text(self.lhs)
            out["rhs"] = text(self.rhs)
        if self.witness:
            out["witness"] = {k: text(v) if not isinstance(v, (int, bool)) else v
                              for k, v in self.witness.items()}
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out
