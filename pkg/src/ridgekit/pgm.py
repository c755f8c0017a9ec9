"""Reading and writing PGM (portable graymap) images, binary P5 and ASCII P2.

The writer always emits the canonical binary form
``P5\\n<width> <height>\\n255\\n`` followed by the raw pixel bytes, so a
write/read round trip is bit-exact.
"""

import numpy as np

from .image import as_gray


class PgmError(ValueError):
    """Base class for malformed PGM input."""


class PgmMagicError(PgmError):
    """Input does not start with a P5 or P2 magic number."""


class PgmMaxvalError(PgmError):
    """Declared maxval is outside the supported [1, 255] range."""


class PgmDimensionError(PgmError):
    """Declared width or height is not a positive integer."""


class PgmTruncatedError(PgmError):
    """Pixel data (or the header itself) ends early."""


_WHITESPACE = b" \t\n\r\x0b\x0c"


def _next_token(data, pos):
    # Skip whitespace and '#' comments (which run to end of line).
    n = len(data)
    while pos < n:
        byte = data[pos:pos + 1]
        if byte in (b"#",):
            nl = data.find(b"\n", pos)
            pos = n if nl < 0 else nl + 1
        elif byte in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise PgmTruncatedError("unexpected end of input inside header")
    start = pos
    while pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _int_token(data, pos, what):
    token, pos = _next_token(data, pos)
    try:
        return int(token), pos
    except ValueError:
        raise PgmError(f"malformed {what} token {token!r}") from None


def read_pgm(data):
    """Parse PGM bytes into a 2D uint8 image array."""
    data = bytes(data)
    try:
        magic, pos = _next_token(data, 0)
    except PgmTruncatedError:
        raise PgmMagicError("no PGM magic number found") from None
    if magic not in (b"P5", b"P2"):
        raise PgmMagicError(f"not a P5/P2 PGM (magic {magic!r})")
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    if width <= 0 or height <= 0:
        raise PgmDimensionError(f"image dimensions must be positive, got {width}x{height}")
    maxval, pos = _int_token(data, pos, "maxval")
    if not 1 <= maxval <= 255:
        raise PgmMaxvalError(f"maxval {maxval} unsupported (must be in [1, 255])")

    count = width * height
    if magic == b"P5":
        # Exactly one whitespace byte separates the header from the raster.
        if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
            raise PgmTruncatedError("missing whitespace before binary pixel data")
        pos += 1
        payload = data[pos:pos + count]
        if len(payload) < count:
            raise PgmTruncatedError(
                f"need {count} pixel bytes, found {len(payload)}")
        img = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
        if maxval < 255 and int(img.max()) > maxval:
            raise PgmError(f"pixel value exceeds declared maxval {maxval}")
        return img.copy()

    values = np.empty(count, dtype=np.uint8)
    for i in range(count):
        try:
            value, pos = _int_token(data, pos, "pixel")
        except PgmTruncatedError:
            raise PgmTruncatedError(
                f"need {count} pixel values, found {i}") from None
        if not 0 <= value <= maxval:
            raise PgmError(f"pixel value {value} outside [0, {maxval}]")
        values[i] = value
    return values.reshape(height, width)


def write_pgm(image):
    """Encode an image as canonical binary PGM bytes."""
    img = as_gray(image)
    height, width = img.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + img.tobytes()
