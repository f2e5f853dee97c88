#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "expression.hpp"

namespace fibexpr
{

using vertex = std::int64_t;
using interval = std::pair<vertex, vertex>;

/// Tie-break between the two middle vertices of an interval with an even
/// number of vertices.
enum class tie
{
  low,
  high
};

/// The middle vertex of (p, q), or one of the two middle vertices.
inline vertex middle_vertex( vertex p, vertex q, tie t = tie::low )
{
  return t == tie::low ? ( p + q ) / 2 : ( p + q + 1 ) / 2;
}

/* Decomposition-vertex placement policies */

struct middle_low
{
};

struct middle_high
{
};

/// Always splits at p + 1.
struct leftmost
{
};

/// Explicit vertex per interval; intervals not listed fall back to a middle vertex.
struct fixed_map
{
  std::map<interval, vertex> choices;
  tie fallback = tie::low;
};

/// Pseudo-random vertex, a pure function of (seed, p, q).
struct seeded
{
  std::uint64_t seed = 0;
};

using strategy = std::variant<middle_low, middle_high, leftmost, fixed_map, seeded>;

namespace detail
{

inline std::uint64_t splitmix64( std::uint64_t x )
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

inline std::string describe( interval iv )
{
  return "(" + std::to_string( iv.first ) + ", " + std::to_string( iv.second ) + ")";
}

class term_cache
{
public:
  expr const& get( label l )
  {
    auto [it, inserted] = terms_.try_emplace( l );
    if ( inserted )
      it->second = expr::term( l );
    return it->second;
  }

private:
  std::map<label, expr> terms_;
};

inline label a_edge( vertex v ) { return a( static_cast<std::uint32_t>( v ) ); }
inline label b_edge( vertex v ) { return b( static_cast<std::uint32_t>( v ) ); }

} // namespace detail

/// Vertex chosen by `s` for the interval (p, q), q - p >= 2.
inline vertex choose_vertex( strategy const& s, vertex p, vertex q )
{
  struct visitor
  {
    vertex p, q;
    vertex operator()( middle_low ) const { return middle_vertex( p, q, tie::low ); }
    vertex operator()( middle_high ) const { return middle_vertex( p, q, tie::high ); }
    vertex operator()( leftmost ) const { return p + 1; }
    vertex operator()( fixed_map const& f ) const
    {
      if ( auto it = f.choices.find( { p, q } ); it != f.choices.end() )
        return it->second;
      return middle_vertex( p, q, f.fallback );
    }
    vertex operator()( seeded s ) const
    {
      auto h = detail::splitmix64( s.seed ^ detail::splitmix64( static_cast<std::uint64_t>( p ) * 0x100000001b3ull +
                                                                 static_cast<std::uint64_t>( q ) ) );
      return p + 1 + static_cast<vertex>( h % static_cast<std::uint64_t>( q - p - 1 ) );
    }
  };
  return std::visit( visitor{ p, q }, s );
}

/*! \brief Decomposition procedure for the n-vertex Fibonacci graph.

  E(p, p) = 1, E(p, p+1) = a_p, and for q >= p + 2 with i chosen by `s`

      E(p, q) = E(p, i) E(i, q) + E(p, i-1) b_{i-1} E(i+1, q)

  since every path from p to q either passes through i or jumps over it on
  b_{i-1}. Subexpressions of equal intervals are shared. The result is
  simplified.
*/
inline expr decompose( vertex n, strategy const& s )
{
  if ( n < 1 )
    throw error( error_kind::invalid_n, "vertex count must be at least 1, got " + std::to_string( n ) );

  std::unordered_map<vertex, expr> memo;
  detail::term_cache terms;

  auto build = [&]( auto const& self, vertex p, vertex q ) -> expr {
    if ( q == p )
      return expr::unit();
    if ( q == p + 1 )
      return terms.get( detail::a_edge( p ) );
    auto const key = p * ( n + 2 ) + q;
    if ( auto it = memo.find( key ); it != memo.end() )
      return it->second;

    auto const i = choose_vertex( s, p, q );
    if ( i <= p || i >= q )
      throw error( error_kind::invalid_vertex_choice,
                   "vertex " + std::to_string( i ) + " is not inside " + detail::describe( { p, q } ) );

    auto through = make_product( { self( self, p, i ), self( self, i, q ) } );
    auto bypass = make_product( { self( self, p, i - 1 ), terms.get( detail::b_edge( i - 1 ) ), self( self, i + 1, q ) } );
    auto result = make_sum( { through, bypass } );
    memo.emplace( key, result );
    return result;
  };
  return build( build, 1, n );
}

/* Generalized decomposition */

/// Near-equal spacing; `tie` picks the side when a position falls halfway.
struct uniform
{
  tie tie_break = tie::low;
};

/// Explicit vertex lists per interval; others fall back to uniform spacing.
struct fixed_list
{
  std::map<interval, std::vector<vertex>> positions;
  tie fallback = tie::low;
};

struct gd_spec
{
  std::int64_t m = 2;
  std::variant<uniform, fixed_list> placement = uniform{};
};

/*! \brief Decomposition vertices splitting (p, q) into m' = min(m, q - p)
  near-equal parts.

  Vertex j sits at p + round(j (q - p) / m'), rounding halves down for
  `tie::low` and up for `tie::high`, so that m = 2 picks the same middle
  vertex as the binary procedure.
*/
inline std::vector<vertex> uniform_positions( vertex p, vertex q, std::int64_t m, tie t = tie::low )
{
  if ( m < 2 )
    throw error( error_kind::invalid_m, "m must be at least 2, got " + std::to_string( m ) );
  auto const d = q - p;
  if ( d < 1 )
    return {};
  auto const parts = std::min( m, d );
  std::vector<vertex> result;
  result.reserve( static_cast<std::size_t>( parts - 1 ) );
  for ( std::int64_t j = 1; j < parts; ++j )
  {
    // round(j d / parts) with numerator and denominator doubled
    auto const num = 2 * j * d;
    auto const den = 2 * parts;
    auto offset = t == tie::low ? ( num - parts + den - 1 ) / den : ( num + parts ) / den;
    auto v = p + offset;
    if ( !result.empty() )
      v = std::max( v, result.back() + 1 );
    result.push_back( v );
  }
  return result;
}

namespace detail
{

inline std::vector<vertex> gd_positions( gd_spec const& g, vertex p, vertex q )
{
  if ( auto const* u = std::get_if<uniform>( &g.placement ) )
    return uniform_positions( p, q, g.m, u->tie_break );
  auto const& f = std::get<fixed_list>( g.placement );
  if ( auto it = f.positions.find( { p, q } ); it != f.positions.end() )
    return it->second;
  return uniform_positions( p, q, g.m, f.fallback );
}

/// Calls `visit(mask)` for every bypass subset in increasing binary order
/// (bit j set = vertex j is bypassed). Subsets bypassing two adjacent
/// vertices i and i+1 are skipped: their middle segment E(i+1, i) is Zero.
template<typename Visit>
void for_each_bypass_set( std::vector<vertex> const& vertices, Visit&& visit )
{
  auto const k = vertices.size();
  std::vector<bool> bypassed( k, false );
  // deciding the most significant bit first, 0 before 1, yields increasing order
  auto walk = [&]( auto const& self, std::size_t remaining ) -> void {
    if ( remaining == 0 )
    {
      visit( std::as_const( bypassed ) );
      return;
    }
    auto const j = remaining - 1;
    bypassed[j] = false;
    self( self, j );
    if ( j + 1 < k && bypassed[j + 1] && vertices[j + 1] == vertices[j] + 1 )
      return;
    bypassed[j] = true;
    self( self, j );
    bypassed[j] = false;
  };
  walk( walk, k );
}

} // namespace detail

/*! \brief Generalized decomposition with m parts per recursive step.

  With decomposition vertices i_1 < ... < i_{m'-1} inside (p, q), E(p, q)
  is the sum over all bypass subsets of the product of segment expressions.
  A vertex on the path closes its segment at i_j and opens the next one at
  i_j; a bypassed vertex contributes b_{i_j - 1}, closing at i_j - 1 and
  reopening at i_j + 1. An empty segment E(x, x-1) is Zero. Summands appear
  in binary-counter order of the bypass subset, no bypass first.
*/
inline expr decompose_gd( vertex n, gd_spec const& g )
{
  if ( n < 1 )
    throw error( error_kind::invalid_n, "vertex count must be at least 1, got " + std::to_string( n ) );
  if ( g.m < 2 )
    throw error( error_kind::invalid_m, "m must be at least 2, got " + std::to_string( g.m ) );

  std::unordered_map<vertex, expr> memo;
  detail::term_cache terms;

  auto build = [&]( auto const& self, vertex p, vertex q ) -> expr {
    if ( q < p )
      return expr::zero();
    if ( q == p )
      return expr::unit();
    if ( q == p + 1 )
      return terms.get( detail::a_edge( p ) );
    auto const key = p * ( n + 2 ) + q;
    if ( auto it = memo.find( key ); it != memo.end() )
      return it->second;

    auto const vertices = detail::gd_positions( g, p, q );
    bool valid = !vertices.empty() && static_cast<std::int64_t>( vertices.size() ) <= g.m - 1;
    for ( std::size_t j = 0; valid && j < vertices.size(); ++j )
      valid = vertices[j] > ( j == 0 ? p : vertices[j - 1] ) && vertices[j] < q;
    if ( !valid )
      throw error( error_kind::invalid_vertex_choice,
                   "decomposition vertices for " + detail::describe( { p, q } ) +
                       " must be 1 to m-1 strictly increasing interior vertices" );

    std::vector<expr> summands;
    detail::for_each_bypass_set( vertices, [&]( std::vector<bool> const& bypassed ) {
      std::vector<expr> factors;
      vertex start = p;
      for ( std::size_t j = 0; j < vertices.size(); ++j )
      {
        auto const i = vertices[j];
        if ( bypassed[j] )
        {
          factors.push_back( self( self, start, i - 1 ) );
          factors.push_back( terms.get( detail::b_edge( i - 1 ) ) );
          start = i + 1;
        }
        else
        {
          factors.push_back( self( self, start, i ) );
          start = i;
        }
      }
      factors.push_back( self( self, start, q ) );
      summands.push_back( make_product( factors ) );
    } );

    auto result = make_sum( summands );
    memo.emplace( key, result );
    return result;
  };
  return build( build, 1, n );
}

} // namespace fibexpr
