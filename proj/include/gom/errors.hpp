#pragma once

#include <stdexcept>
#include <string>

namespace gom {

// Base for all library errors so callers can catch everything at once.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotARotation : public Error { public: using Error::Error; };
class NonPositiveScale : public Error { public: using Error::Error; };
class DegenerateScale : public Error { public: using Error::Error; };
class LatentSizeMismatch : public Error { public: using Error::Error; };
class EmptyField : public Error { public: using Error::Error; };
class BadScheduleParams : public Error { public: using Error::Error; };
class TimestampOutOfRange : public Error { public: using Error::Error; };
class UnknownCategory : public Error { public: using Error::Error; };
class DatasetTooSmall : public Error { public: using Error::Error; };
class PixelOutOfBounds : public Error { public: using Error::Error; };
class DegenerateRay : public Error { public: using Error::Error; };
class NoValidPixels : public Error { public: using Error::Error; };
class DegenerateConfiguration : public Error { public: using Error::Error; };
class EmptyCloud : public Error { public: using Error::Error; };
class PlacementFailure : public Error { public: using Error::Error; };
class IoFailure : public Error { public: using Error::Error; };
class ManifestVersionMismatch : public Error { public: using Error::Error; };
class FileFormatError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

}  // namespace gom
