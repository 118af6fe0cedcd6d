"""Trainer-specific exception types."""


class TrainerError(Exception):
    """Base class for trainer errors."""


class SpecMismatch(TrainerError):
    """The constructed model violates the required output contract."""


class DatasetMissing(TrainerError):
    """Dataset directory, manifest, or a listed file is absent."""


class ChecksumMismatch(TrainerError):
    """A dataset file does not match its manifest checksum."""
