#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "expression.hpp"
#include "modular.hpp"
#include "polynomial.hpp"

namespace fibexpr
{

/// Fibonacci graph on vertices 1..n with edges a_v = (v, v+1) and b_v = (v, v+2).
/// Edges are implicit in n.
class fib_graph
{
public:
  explicit fib_graph( std::int64_t n ) : n_( n )
  {
    if ( n < 1 )
      throw error( error_kind::invalid_n, "vertex count must be at least 1, got " + std::to_string( n ) );
  }

  std::int64_t n() const noexcept { return n_; }
  std::int64_t edge_count() const noexcept { return n_ >= 2 ? 2 * n_ - 3 : 0; }

private:
  std::int64_t n_;
};

/// All edge labels: a_1..a_{n-1}, then b_1..b_{n-2}.
inline std::vector<label> edges( std::int64_t n )
{
  fib_graph g( n );
  std::vector<label> result;
  result.reserve( static_cast<std::size_t>( g.edge_count() ) );
  for ( std::int64_t v = 1; v <= n - 1; ++v )
    result.push_back( a( static_cast<std::uint32_t>( v ) ) );
  for ( std::int64_t v = 1; v <= n - 2; ++v )
    result.push_back( b( static_cast<std::uint32_t>( v ) ) );
  return result;
}

/// Number of source-to-sink paths, N(1) = N(2) = 1, N(n) = N(n-1) + N(n-2).
/// Throws `size_exceeded` when the count does not fit in 64 bits (n > 93).
inline std::uint64_t path_count( std::int64_t n )
{
  fib_graph g( n );
  if ( n > 93 )
    throw error( error_kind::size_exceeded, "path count overflows 64 bits for n > 93" );
  std::uint64_t prev = 1, cur = 1;
  for ( std::int64_t k = 3; k <= n; ++k )
  {
    auto next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

struct path_options
{
  std::uint64_t max_paths = 1'000'000;
};

namespace detail
{

inline void require_enumerable( std::int64_t n, path_options const& options )
{
  if ( n > 93 || path_count( n ) > options.max_paths )
    throw error( error_kind::size_exceeded, "the " + std::to_string( n ) + "-vertex graph has more than " +
                                                std::to_string( options.max_paths ) + " paths" );
}

/// Calls `visit(labels)` for every path, labels in source-to-sink order,
/// paths in lexicographic order of their vertex sequences.
template<typename Visit>
void for_each_path( std::int64_t n, Visit&& visit )
{
  std::vector<label> stack;
  auto walk = [&]( auto const& self, std::int64_t v ) -> void {
    if ( v == n )
    {
      visit( std::as_const( stack ) );
      return;
    }
    stack.push_back( a( static_cast<std::uint32_t>( v ) ) );
    self( self, v + 1 );
    stack.pop_back();
    if ( v + 2 <= n )
    {
      stack.push_back( b( static_cast<std::uint32_t>( v ) ) );
      self( self, v + 2 );
      stack.pop_back();
    }
  };
  walk( walk, 1 );
}

} // namespace detail

/// Every source-to-sink path as its label set, in lexicographic vertex order.
inline std::vector<monomial> enumerate_paths( std::int64_t n, path_options const& options = {} )
{
  fib_graph g( n );
  detail::require_enumerable( n, options );
  std::vector<monomial> paths;
  paths.reserve( static_cast<std::size_t>( path_count( n ) ) );
  detail::for_each_path( n, [&]( std::vector<label> const& labels ) { paths.emplace_back( labels ); } );
  return paths;
}

/// Sum over all paths of the product of their labels (sequential-paths method).
inline expr canonical_expression( std::int64_t n, path_options const& options = {} )
{
  fib_graph g( n );
  if ( n < 2 )
    throw error( error_kind::invalid_n, "the canonical expression needs n >= 2" );
  detail::require_enumerable( n, options );

  auto const labels = edges( n );
  std::vector<expr> terms;
  terms.reserve( labels.size() );
  for ( auto l : labels )
    terms.push_back( expr::term( l ) );
  auto term_of = [&]( label l ) {
    return terms[l.kind == label_kind::a ? l.index - 1 : static_cast<std::size_t>( n - 1 ) + l.index - 1];
  };

  std::vector<expr> summands;
  summands.reserve( static_cast<std::size_t>( path_count( n ) ) );
  detail::for_each_path( n, [&]( std::vector<label> const& path ) {
    std::vector<expr> factors;
    factors.reserve( path.size() );
    for ( auto l : path )
      factors.push_back( term_of( l ) );
    summands.push_back( make_product( factors ) );
  } );
  return make_sum( summands );
}

/*! \brief Path polynomial of the n-vertex graph evaluated modulo a prime in
  linear time.

  Every path to vertex k arrives through a_{k-1} or b_{k-2}, so
  V(1) = 1, V(2) = a_1 and V(k) = a_{k-1} V(k-1) + b_{k-2} V(k-2).
*/
inline std::uint64_t oracle_eval_mod( std::int64_t n, assignment const& values )
{
  fib_graph g( n );
  auto const p = values.prime();
  std::uint64_t before = 0, current = 1 % p;
  for ( std::int64_t k = 2; k <= n; ++k )
  {
    auto next = values.at( a( static_cast<std::uint32_t>( k - 1 ) ) ) * current % p;
    if ( k >= 3 )
      next = ( next + values.at( b( static_cast<std::uint32_t>( k - 2 ) ) ) * before ) % p;
    before = current;
    current = next;
  }
  return current;
}

} // namespace fibexpr
