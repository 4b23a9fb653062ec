#pragma once

#include <stdexcept>
#include <string>

namespace avdiag {

// Base class for all toolkit errors. Specific conditions get their own type
// so callers (and tests) can catch them precisely.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define AVDIAG_DEFINE_ERROR(Name)                      \
    class Name : public Error {                        \
    public:                                            \
        using Error::Error;                            \
    }

// media
AVDIAG_DEFINE_ERROR(MalformedHeader);
AVDIAG_DEFINE_ERROR(UnsupportedEncoding);
AVDIAG_DEFINE_ERROR(TruncatedData);
AVDIAG_DEFINE_ERROR(MuxerFailure);

// interventions
AVDIAG_DEFINE_ERROR(OffsetTooLarge);
AVDIAG_DEFINE_ERROR(InvalidRange);
AVDIAG_DEFINE_ERROR(SameClip);
AVDIAG_DEFINE_ERROR(DonorSilent);
AVDIAG_DEFINE_ERROR(OutOfBandRange);
AVDIAG_DEFINE_ERROR(InvalidOffset);

// annotation
AVDIAG_DEFINE_ERROR(InvalidCount);
AVDIAG_DEFINE_ERROR(MissingAnnotator);

// preference builder
AVDIAG_DEFINE_ERROR(MismatchedBase);
AVDIAG_DEFINE_ERROR(MissingDonorLabel);
AVDIAG_DEFINE_ERROR(PoolExhausted);
AVDIAG_DEFINE_ERROR(EmptyDataset);

// eval harness
AVDIAG_DEFINE_ERROR(BackendUnavailable);
AVDIAG_DEFINE_ERROR(Timeout);
AVDIAG_DEFINE_ERROR(PayloadTooLarge);

class HttpStatus : public Error {
public:
    HttpStatus(int code, const std::string& what) : Error(what), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

// metrics / report
AVDIAG_DEFINE_ERROR(EmptySubset);
AVDIAG_DEFINE_ERROR(MissingDimension);

// pipeline
class MissingPrerequisite : public Error {
public:
    explicit MissingPrerequisite(const std::string& path)
        : Error("missing prerequisite: " + path), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

#undef AVDIAG_DEFINE_ERROR

}  // namespace avdiag
