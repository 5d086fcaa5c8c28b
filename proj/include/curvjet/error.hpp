#pragma once

#include <stdexcept>
#include <string>

namespace curvjet {

// Failures that carry their own category so the CLI can map them to exit codes.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConstructionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExtensionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace curvjet
