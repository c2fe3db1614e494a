class GeometryError(Exception):
    pass


class ZeroVectorError(GeometryError):
    pass


class NotNullError(GeometryError):
    pass


class NotIncidentError(GeometryError):
    pass


class SamePointError(GeometryError):
    pass


class PhotonInsideHypersurfaceError(GeometryError):
    pass


class IncidentPairError(GeometryError):
    pass


class DegenerateSpanError(GeometryError):
    pass


class WrongSignatureError(GeometryError):
    pass


class InvalidConfigurationError(GeometryError):
    pass


class NormTooLargeError(GeometryError):
    pass


class NotUpperHalfplaneError(GeometryError):
    pass


class NotRankOneError(GeometryError):
    pass


class DependentPairError(GeometryError):
    pass


class NotTimelikeError(GeometryError):
    pass


class NotSpacelikeError(GeometryError):
    pass


class NotUnitSpacelikeError(NotSpacelikeError):
    pass


class GeodesicNotInPlaneError(GeometryError):
    pass


class NotInMinkowskiPatchError(GeometryError):
    pass


class NotInPatchError(GeometryError):
    pass


class OnEinstein2Error(GeometryError):
    pass


class NotAdaptedError(GeometryError):
    pass


class ImageMismatchError(GeometryError):
    pass
