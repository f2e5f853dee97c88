#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fibexpr
{

enum class error_kind
{
  invalid_n,
  invalid_m,
  invalid_vertex_choice,
  invalid_prime,
  size_exceeded,
  duplicate_monomial,
  repeated_label,
  unassigned_label,
  syntax_error,
  degenerate_fit
};

inline char const* to_string( error_kind kind )
{
  switch ( kind )
  {
  case error_kind::invalid_n:
    return "InvalidN";
  case error_kind::invalid_m:
    return "InvalidM";
  case error_kind::invalid_vertex_choice:
    return "InvalidVertexChoice";
  case error_kind::invalid_prime:
    return "InvalidPrime";
  case error_kind::size_exceeded:
    return "SizeExceeded";
  case error_kind::duplicate_monomial:
    return "DuplicateMonomial";
  case error_kind::repeated_label:
    return "RepeatedLabel";
  case error_kind::unassigned_label:
    return "UnassignedLabel";
  case error_kind::syntax_error:
    return "SyntaxError";
  case error_kind::degenerate_fit:
    return "DegenerateFit";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class error : public std::runtime_error
{
public:
  error( error_kind kind, std::string const& message )
      : std::runtime_error( std::string( to_string( kind ) ) + ": " + message ), kind_( kind )
  {
  }

  error_kind kind() const noexcept { return kind_; }

private:
  error_kind kind_;
};

class syntax_error : public error
{
public:
  syntax_error( std::size_t position, std::string const& message )
      : error( error_kind::syntax_error, message + " at position " + std::to_string( position ) ),
        position_( position )
  {
  }

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace fibexpr
