#pragma once

#include <stdexcept>
#include <string>

namespace ucf {

// Every error thrown by the library derives from Error so callers (the CLI in
// particular) can map them onto exit codes without catching std::exception.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class DegeneratePath : public Error {
public:
    using Error::Error;
};

class InvalidConfiguration : public Error {
public:
    using Error::Error;
};

class PhaseError : public Error {
public:
    using Error::Error;
};

class SchedulerError : public Error {
public:
    using Error::Error;
};

class GeneratorError : public Error {
public:
    using Error::Error;
};

class InvalidLayout : public Error {
public:
    using Error::Error;
};

}  // namespace ucf
