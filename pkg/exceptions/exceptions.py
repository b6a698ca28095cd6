class Error(Exception):
    """Base class for exceptions in this module."""
    def __init__(self, message):
        super().__init__(message)
        self.message = message


class ConfigError(Error):
    """Exception raised for errors in configuration"""
    pass


class SerializationError(Error):
    """Exception raised for errors during serialization / deserialization of tensor, vector and instance files"""
    pass


class TensorError(Error):
    """Exception raised for tensors that cannot be constructed (non-finite entries, bad shape, false symmetry claim)"""
    pass


class DimensionMismatchError(Error):
    """Exception raised when a vector length does not match the tensor dimension"""
    pass


class InvalidParameterError(Error):
    """Exception raised for out-of-range numeric parameters"""
    pass


class EnumerationLimitError(Error):
    """Exception raised when support enumeration is asked for a dimension above its limit"""
    pass


class InvalidWitnessError(Error):
    """Exception raised when an S-witness does not satisfy y > 0 and Ay^(m-1) > 0"""
    pass


class ZeroVectorError(Error):
    """Exception raised when an eigenvector candidate is the zero vector"""
    pass
