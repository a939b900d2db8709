"""Exception hierarchy shared by every loopforge module."""


class LoopforgeError(Exception):
    pass


class NotLatinSquare(LoopforgeError):
    def __init__(self, kind, index, value):
        self.kind = kind
        self.index = index
        self.value = value
        super().__init__(f"{kind} {index} repeats value {value}")


class NoIdentity(LoopforgeError):
    def __init__(self, a, b, got):
        self.a, self.b, self.got = a, b, got
        super().__init__(f"0 is not the identity: {a}*{b} = {got}")


class InversesUndefined(LoopforgeError):
    def __init__(self, x):
        self.x = x
        super().__init__(f"element {x} has no two-sided inverse")


class NotBol(LoopforgeError):
    pass


class NotBruck(LoopforgeError):
    pass


class NotSubloop(LoopforgeError):
    pass


class NotNormal(LoopforgeError):
    pass


class NotSubgroup(LoopforgeError):
    pass


class CapExceeded(LoopforgeError):
    def __init__(self, order, cap):
        self.order, self.cap = order, cap
        super().__init__(f"group order {order} exceeds cap {cap}")


class NotTransversal(LoopforgeError):
    def __init__(self, g, coset):
        self.g, self.coset = g, coset
        super().__init__(f"K is not a transversal of H^{g}: coset {coset} hit twice or missed")


class AmbiguousRepresentative(LoopforgeError):
    pass


class NotSubfolder(LoopforgeError):
    pass


class ExtensionInconsistent(LoopforgeError):
    pass


class EvenOrder(LoopforgeError):
    pass


class NotInvolutory(LoopforgeError):
    pass


class BoundExceeded(LoopforgeError):
    pass


class ManifestMismatch(LoopforgeError):
    pass


class ParseError(LoopforgeError):
    pass
