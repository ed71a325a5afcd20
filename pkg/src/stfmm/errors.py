class StegoError(Exception):
    """Base class for all errors raised by stfmm."""


class ImageFormatError(StegoError, ValueError):
    """Malformed, truncated or unsupported image data."""


class UnsupportedCharacter(StegoError, ValueError):
    def __init__(self, char, offset, charset_name):
        self.char = char
        self.offset = offset
        self.charset_name = charset_name
        super().__init__(
            f"character {char!r} (code {ord(char)}) at offset {offset} "
            f"is not in charset {charset_name}"
        )


class CapacityExceeded(StegoError, ValueError):
    def __init__(self, length, capacity):
        self.length = length
        self.capacity = capacity
        super().__init__(
            f"message of {length} characters exceeds capacity of {capacity}"
        )


class CorruptEncoding(StegoError, ValueError):
    """A (position, remainder) pair that does not map into the alphabet."""


class CorruptWindow(StegoError):
    """A stego window that cannot be decoded."""

    def __init__(self, window_row, window_col, reason):
        self.window_row = window_row
        self.window_col = window_col
        self.reason = reason
        super().__init__(f"window (row {window_row}, col {window_col}): {reason}")
