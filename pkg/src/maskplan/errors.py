"""Exception types shared across the toolkit."""


class MaskplanError(Exception):
    """Base class for every toolkit-specific error."""


class NonCanonicalColor(MaskplanError):
    """A scene image pixel is not one of the four canonical colors."""

    def __init__(self, coord, color):
        self.coord = coord
        self.color = tuple(int(c) for c in color)
        super().__init__(f"non-canonical color {self.color} at {coord}")


class MissingOrDuplicateMarker(MaskplanError):
    """A scene does not contain exactly one start and one goal marker."""

    def __init__(self, kind, count):
        self.kind = kind
        self.count = count
        super().__init__(f"expected exactly one {kind} cell, found {count}")


class ParseError(MaskplanError):
    """Malformed scene text; positions are 1-based."""

    def __init__(self, line, col, reason):
        self.line = line
        self.col = col
        self.reason = reason
        super().__init__(f"line {line}, col {col}: {reason}")


class Unsolvable(MaskplanError):
    """Random obstacle placement left no start-goal path after all retries."""

    def __init__(self, scenario, index):
        self.scenario = scenario
        self.index = index
        super().__init__(f"scenario {scenario}, scene {index}: no solvable layout after 100 retries")


class OutOfRange(MaskplanError):
    """A mask-vector value lies outside [-1, 1]."""

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"value {value!r} at index {index} outside [-1, 1]")


class MissingMaskFile(MaskplanError):
    """No mask file exists for the requested scene index."""

    def __init__(self, index, path):
        self.index = index
        self.path = path
        super().__init__(f"no mask file for scene {index}: {path}")


class MalformedMaskFile(MaskplanError):
    """A mask file violates the MASKV1 format."""

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class DatasetMissing(MaskplanError):
    """Dataset directory or its manifest is absent."""

    def __init__(self, path):
        self.path = path
        super().__init__(f"dataset manifest not found: {path}")


class ChecksumMismatch(MaskplanError):
    """A dataset file does not match the checksum recorded in the manifest."""

    def __init__(self, path):
        self.path = path
        super().__init__(f"checksum mismatch: {path}")
