#pragma once

#include <stdexcept>
#include <string>

namespace webcred {

// Base for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- ingest ---------------------------------------------------------------
class Unreachable : public Error {
public:
    explicit Unreachable(const std::string& what) : Error(what) {}
};

class HttpError : public Error {
public:
    HttpError(int status, const std::string& url)
        : Error("http status " + std::to_string(status) + " for " + url),
          status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

class TooManyRedirects : public Unreachable {
public:
    explicit TooManyRedirects(const std::string& url)
        : Unreachable("redirect limit exceeded for " + url) {}
};

class StoreError : public Error {
public:
    explicit StoreError(const std::string& what) : Error(what) {}
};

class NotCached : public Error {
public:
    explicit NotCached(const std::string& url) : Error("not cached: " + url) {}
};

class IntegrityError : public Error {
public:
    explicit IntegrityError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// -- tables / external data ------------------------------------------------
class TableFormatError : public Error {
public:
    explicit TableFormatError(const std::string& what) : Error(what) {}
};

class ArchiveUnavailable : public Error {
public:
    explicit ArchiveUnavailable(const std::string& what) : Error(what) {}
};

// -- html2seq ----------------------------------------------------------------
class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("empty tag corpus") {}
};

// -- learn -------------------------------------------------------------------
class DegenerateLabels : public Error {
public:
    explicit DegenerateLabels(const std::string& what) : Error(what) {}
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

class LeakageError : public Error {
public:
    explicit LeakageError(const std::string& what) : Error(what) {}
};

// -- eval ----------------------------------------------------------------------
class InvalidRating : public Error {
public:
    explicit InvalidRating(int rating)
        : Error("likert rating out of range: " + std::to_string(rating)) {}
};

class EmptyEval : public Error {
public:
    EmptyEval() : Error("empty evaluation input") {}
};

class StratificationError : public Error {
public:
    explicit StratificationError(const std::string& what) : Error(what) {}
};

// -- corpus ----------------------------------------------------------------------
class RowError : public Error {
public:
    RowError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EmptyRatings : public Error {
public:
    EmptyRatings() : Error("no ratings to aggregate") {}
};

class IncompleteReport : public Error {
public:
    explicit IncompleteReport(const std::string& what) : Error(what) {}
};

} // namespace webcred
