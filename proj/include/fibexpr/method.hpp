#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "decomposer.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "fib_graph.hpp"

namespace fibexpr
{

enum class method_kind
{
  canonical,
  middle,
  fixed,
  leftmost,
  seeded,
  gd
};

inline char const* to_string( method_kind kind )
{
  switch ( kind )
  {
  case method_kind::canonical:
    return "canonical";
  case method_kind::middle:
    return "middle";
  case method_kind::fixed:
    return "fixed";
  case method_kind::leftmost:
    return "leftmost";
  case method_kind::seeded:
    return "seeded";
  case method_kind::gd:
    return "gd";
  }
  return "unknown";
}

inline std::optional<method_kind> parse_method_kind( std::string_view text )
{
  for ( auto k : { method_kind::canonical, method_kind::middle, method_kind::fixed, method_kind::leftmost,
                   method_kind::seeded, method_kind::gd } )
    if ( text == to_string( k ) )
      return k;
  return std::nullopt;
}

/// A way of generating the expression of an n-vertex Fibonacci graph.
struct method
{
  method_kind kind = method_kind::middle;
  tie tie_break = tie::low;
  std::int64_t m = 2;           // gd only
  std::uint64_t seed = 0;       // seeded only
  fixed_map splits;             // fixed only
  path_options paths;           // canonical only

  static method canonical() { return of( method_kind::canonical ); }
  static method middle( tie t = tie::low )
  {
    auto result = of( method_kind::middle );
    result.tie_break = t;
    return result;
  }
  static method left() { return of( method_kind::leftmost ); }
  static method with_seed( std::uint64_t s )
  {
    auto result = of( method_kind::seeded );
    result.seed = s;
    return result;
  }
  static method gd( std::int64_t parts, tie t = tie::low )
  {
    auto result = of( method_kind::gd );
    result.m = parts;
    result.tie_break = t;
    return result;
  }
  static method fixed( fixed_map f )
  {
    auto result = of( method_kind::fixed );
    result.tie_break = f.fallback;
    result.splits = std::move( f );
    return result;
  }

private:
  static method of( method_kind k )
  {
    method result;
    result.kind = k;
    return result;
  }
};

/// Strategy driving the binary procedure; not meaningful for canonical or gd.
inline strategy strategy_of( method const& how )
{
  switch ( how.kind )
  {
  case method_kind::middle:
    if ( how.tie_break == tie::low )
      return middle_low{};
    return middle_high{};
  case method_kind::fixed:
    return how.splits;
  case method_kind::leftmost:
    return leftmost{};
  case method_kind::seeded:
    return seeded{ how.seed };
  default:
    throw std::logic_error( std::string( to_string( how.kind ) ) + " has no binary strategy" );
  }
}

inline gd_spec gd_spec_of( method const& how ) { return { how.m, uniform{ how.tie_break } }; }

inline expr build_expression( vertex n, method const& how )
{
  switch ( how.kind )
  {
  case method_kind::canonical:
    return canonical_expression( n, how.paths );
  case method_kind::gd:
    return decompose_gd( n, gd_spec_of( how ) );
  default:
    return decompose( n, strategy_of( how ) );
  }
}

} // namespace fibexpr
