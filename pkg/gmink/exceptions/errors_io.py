from .errors import GminkException


class BodyFileError(GminkException):
    def __init__(self, path, description: str):
        self.path = str(path)
        self.description = description
        super().__init__(f"{self.path}: {description}")


class SchemaVersionError(BodyFileError):
    def __init__(self, path, found, expected: int):
        self.found = found
        self.expected = expected
        super().__init__(
            path,
            f"schema_version {found!r} is not supported "
            f"(this reader understands {expected})",
        )
