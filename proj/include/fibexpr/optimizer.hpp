#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "decomposer.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "fib_graph.hpp"
#include "method.hpp"

namespace fibexpr
{

enum class metric
{
  terms, /* T: term occurrences */
  plus   /* P: plus operators */
};

inline char const* to_string( metric m ) { return m == metric::terms ? "T" : "P"; }

namespace detail
{

/// X(1) = 0, X(2) = base2,
/// X(n) = X(ceil(n/2)) + X(floor(n/2)+1) + X(ceil(n/2)-1) + X(floor(n/2)) + 1.
inline std::uint64_t halving_recurrence( std::int64_t n, std::uint64_t base2, std::map<std::int64_t, std::uint64_t>& memo )
{
  if ( n == 1 )
    return 0;
  if ( n == 2 )
    return base2;
  if ( auto it = memo.find( n ); it != memo.end() )
    return it->second;
  auto const up = ( n + 1 ) / 2, down = n / 2;
  auto value = halving_recurrence( up, base2, memo ) + halving_recurrence( down + 1, base2, memo ) +
               halving_recurrence( up - 1, base2, memo ) + halving_recurrence( down, base2, memo ) + 1;
  memo.emplace( n, value );
  return value;
}

inline void require_positive( std::int64_t n )
{
  if ( n < 1 )
    throw error( error_kind::invalid_n, "vertex count must be at least 1, got " + std::to_string( n ) );
}

} // namespace detail

/// Term count of the middle-split decomposition, by recurrence.
inline std::uint64_t recurrence_T( std::int64_t n )
{
  detail::require_positive( n );
  std::map<std::int64_t, std::uint64_t> memo;
  return detail::halving_recurrence( n, 1, memo );
}

/// Plus-operator count of the middle-split decomposition, by recurrence.
inline std::uint64_t recurrence_P( std::int64_t n )
{
  detail::require_positive( n );
  std::map<std::int64_t, std::uint64_t> memo;
  return detail::halving_recurrence( n, 0, memo );
}

/*! \brief Exact minima of a metric over all binary decompositions of every
  sub-interval of (1, n).

  Both metrics are additive over one decomposition step:

      V(p, q) = min over p < i < q of V(p, i) + V(i, q) + V(p, i-1) + V(i+1, q) + 1

  with V(x, x) = 0 and V(x, x+1) = 1 for T (0 for P). Every sub-interval of
  a Fibonacci graph is again a Fibonacci graph, so V(p, q) depends on the
  vertex count q - p + 1 alone; the table is filled bottom-up by that count
  and answers queries for any (p, q) by translation.
*/
class interval_table
{
public:
  interval_table( std::int64_t n, metric which ) : n_( n ), metric_( which )
  {
    detail::require_positive( n );
    auto const size = static_cast<std::size_t>( n ) + 1;
    min_.assign( size, 0 );
    offsets_.assign( size, {} );
    if ( n >= 2 )
      min_[2] = which == metric::terms ? 1 : 0;
    for ( std::int64_t len = 3; len <= n; ++len )
    {
      std::uint64_t best = UINT64_MAX;
      std::vector<std::int64_t> best_offsets;
      // split vertex i = p + k, k = 1 .. len-2
      for ( std::int64_t k = 1; k <= len - 2; ++k )
      {
        auto value = min_[k + 1] + min_[len - k] + min_[k] + min_[len - k - 1] + 1;
        if ( value < best )
        {
          best = value;
          best_offsets.clear();
        }
        if ( value == best )
          best_offsets.push_back( k );
      }
      min_[len] = best;
      offsets_[len] = std::move( best_offsets );
    }
  }

  std::int64_t n() const noexcept { return n_; }
  metric which() const noexcept { return metric_; }

  std::uint64_t min_value( vertex p, vertex q ) const { return min_[length( p, q )]; }

  /// All minimizing decomposition vertices of (p, q), ascending; empty when q - p < 2.
  std::vector<vertex> argmin( vertex p, vertex q ) const
  {
    std::vector<vertex> result;
    for ( auto k : offsets_[length( p, q )] )
      result.push_back( p + k );
    return result;
  }

private:
  std::size_t length( vertex p, vertex q ) const
  {
    if ( p < 1 || q > n_ || q < p )
      throw error( error_kind::invalid_n, "interval " + detail::describe( { p, q } ) + " is outside 1.." +
                                              std::to_string( n_ ) );
    return static_cast<std::size_t>( q - p + 1 );
  }

  std::int64_t n_;
  metric metric_;
  std::vector<std::uint64_t> min_;
  std::vector<std::vector<std::int64_t>> offsets_;
};

inline interval_table min_metric( std::int64_t n, metric which ) { return interval_table( n, which ); }

/// The middle vertex of (p, q), or both middle vertices for an even vertex count.
inline std::vector<vertex> middle_vertices( vertex p, vertex q )
{
  auto low = middle_vertex( p, q, tie::low ), high = middle_vertex( p, q, tie::high );
  if ( low == high )
    return { low };
  return { low, high };
}

struct middle_violation
{
  std::int64_t n;
  interval where;
  std::vector<vertex> argmin;
};

struct middle_optimality_report
{
  std::int64_t n_max = 0;
  std::uint64_t intervals_checked = 0;
  std::vector<middle_violation> violations;

  bool passed() const noexcept { return violations.empty(); }
};

/// Checks that for every n <= n_max and every interval, the T-minimizing
/// decomposition vertices are exactly the middle ones.
inline middle_optimality_report verify_middle_optimality( std::int64_t n_max )
{
  middle_optimality_report report;
  report.n_max = n_max;
  for ( std::int64_t n = 3; n <= n_max; ++n )
  {
    auto const table = min_metric( n, metric::terms );
    for ( vertex p = 1; p <= n; ++p )
      for ( vertex q = p + 2; q <= n; ++q )
      {
        ++report.intervals_checked;
        auto found = table.argmin( p, q );
        if ( found != middle_vertices( p, q ) )
          report.violations.push_back( { n, { p, q }, std::move( found ) } );
      }
  }
  return report;
}

/// Groups ν = 1, 2, ... of special n: [7, 7], then first' = 2 first - 1 and
/// last' = 2 last + 1. Groups are clipped to n_max.
inline std::vector<interval> predicted_special_groups( std::int64_t n_max )
{
  std::vector<interval> groups;
  for ( std::int64_t first = 7, last = 7; first <= n_max; first = 2 * first - 1, last = 2 * last + 1 )
    groups.emplace_back( first, std::min( last, n_max ) );
  return groups;
}

struct special_values_report
{
  std::int64_t n_max = 0;
  std::vector<std::int64_t> values;
  std::vector<interval> groups;           // maximal runs of consecutive special n
  std::vector<interval> predicted_groups; // from the group recurrences
  bool groups_match = false;
};

/*! \brief Sizes n at which the P-minimum of the whole graph is attained by
  some first decomposition vertex besides the middle one(s).

  n is special iff the argmin set of P on (1, n) strictly contains the
  middle vertex set.
*/
inline special_values_report special_values( std::int64_t n_max )
{
  special_values_report report;
  report.n_max = n_max;
  if ( n_max >= 1 )
  {
    // (1, n) in the n_max table is the whole n-vertex graph.
    auto const table = min_metric( n_max, metric::plus );
    for ( std::int64_t n = 3; n <= n_max; ++n )
    {
      auto const found = table.argmin( 1, n );
      auto const middle = middle_vertices( 1, n );
      if ( found.size() > middle.size() && std::includes( found.begin(), found.end(), middle.begin(), middle.end() ) )
        report.values.push_back( n );
    }
  }
  for ( auto n : report.values )
  {
    if ( !report.groups.empty() && report.groups.back().second + 1 == n )
      report.groups.back().second = n;
    else
      report.groups.emplace_back( n, n );
  }
  report.predicted_groups = predicted_special_groups( n_max );
  report.groups_match = report.groups == report.predicted_groups;
  return report;
}

/*! \brief Least-squares slope of log T(n) against log n for uniform
  generalized decomposition with m parts.

  T(n) is measured on the generated expressions. Throws `degenerate_fit`
  for fewer than four sizes, sizes not strictly increasing, or sizes too
  small to carry a split (n < 3).
*/
inline double exponent_fit( std::int64_t m, std::vector<std::int64_t> const& n_list )
{
  if ( m < 2 )
    throw error( error_kind::invalid_m, "m must be at least 2, got " + std::to_string( m ) );
  if ( n_list.size() < 4 )
    throw error( error_kind::degenerate_fit, "need at least 4 sizes" );
  for ( std::size_t k = 0; k < n_list.size(); ++k )
  {
    if ( n_list[k] < 3 )
      throw error( error_kind::degenerate_fit, "sizes must be at least 3" );
    if ( k > 0 && n_list[k] <= n_list[k - 1] )
      throw error( error_kind::degenerate_fit, "sizes must be strictly increasing" );
  }

  std::vector<double> xs, ys;
  for ( auto n : n_list )
  {
    auto const terms = metric_terms( decompose_gd( n, { m, uniform{} } ) );
    xs.push_back( std::log( static_cast<double>( n ) ) );
    ys.push_back( std::log( static_cast<double>( terms ) ) );
  }
  auto const count = static_cast<double>( xs.size() );
  double mean_x = 0, mean_y = 0;
  for ( std::size_t k = 0; k < xs.size(); ++k )
  {
    mean_x += xs[k] / count;
    mean_y += ys[k] / count;
  }
  double sxy = 0, sxx = 0;
  for ( std::size_t k = 0; k < xs.size(); ++k )
  {
    sxy += ( xs[k] - mean_x ) * ( ys[k] - mean_y );
    sxx += ( xs[k] - mean_x ) * ( xs[k] - mean_x );
  }
  if ( sxx <= 0 )
    throw error( error_kind::degenerate_fit, "sizes do not spread" );
  return sxy / sxx;
}

/// T and P of a generated expression.
struct metric_pair
{
  std::uint64_t terms = 0;
  std::uint64_t plus = 0;

  friend bool operator==( metric_pair const&, metric_pair const& ) = default;
};

/*! \brief T and P a method is expected to produce, computed from interval
  counts alone without building an expression.

  Middle splits use the halving recurrences. The canonical expression has
  one summand per path and one term per path edge. Other methods follow
  their vertex choices through the additive step counts.
*/
inline metric_pair predicted_metrics( vertex n, method const& how )
{
  detail::require_positive( n );
  switch ( how.kind )
  {
  case method_kind::middle:
    return { recurrence_T( n ), recurrence_P( n ) };
  case method_kind::canonical:
  {
    // paths[k] and edge totals[k] over all paths from 1 to k
    std::vector<std::uint64_t> paths( static_cast<std::size_t>( n ) + 1, 0 ), total( paths.size(), 0 );
    paths[1] = 1;
    for ( std::size_t k = 2; k < paths.size(); ++k )
    {
      paths[k] = paths[k - 1] + ( k >= 3 ? paths[k - 2] : 0 );
      total[k] = total[k - 1] + paths[k - 1] + ( k >= 3 ? total[k - 2] + paths[k - 2] : 0 );
    }
    return { total.back(), paths.back() - 1 };
  }
  case method_kind::gd:
  {
    auto const spec = gd_spec_of( how );
    std::map<interval, metric_pair> memo;
    auto count = [&]( auto const& self, vertex p, vertex q ) -> metric_pair {
      if ( q - p < 2 )
        return { q == p + 1 ? 1u : 0u, 0 };
      if ( auto it = memo.find( { p, q } ); it != memo.end() )
        return it->second;
      auto const vertices = detail::gd_positions( spec, p, q );
      metric_pair result;
      std::uint64_t summands = 0;
      detail::for_each_bypass_set( vertices, [&]( std::vector<bool> const& bypassed ) {
        vertex start = p;
        for ( std::size_t j = 0; j < vertices.size(); ++j )
        {
          auto const end = bypassed[j] ? vertices[j] - 1 : vertices[j];
          auto const part = self( self, start, end );
          result.terms += part.terms + ( bypassed[j] ? 1 : 0 );
          result.plus += part.plus;
          start = bypassed[j] ? vertices[j] + 1 : vertices[j];
        }
        auto const last = self( self, start, q );
        result.terms += last.terms;
        result.plus += last.plus;
        ++summands;
      } );
      result.plus += summands - 1;
      memo.emplace( interval{ p, q }, result );
      return result;
    };
    return count( count, 1, n );
  }
  default:
  {
    auto const s = strategy_of( how );
    std::map<interval, metric_pair> memo;
    auto count = [&]( auto const& self, vertex p, vertex q ) -> metric_pair {
      if ( q - p < 2 )
        return { q == p + 1 ? 1u : 0u, 0 };
      if ( auto it = memo.find( { p, q } ); it != memo.end() )
        return it->second;
      auto const i = choose_vertex( s, p, q );
      auto const x = self( self, p, i ), y = self( self, i, q ), u = self( self, p, i - 1 ), v = self( self, i + 1, q );
      metric_pair result{ x.terms + y.terms + u.terms + v.terms + 1, x.plus + y.plus + u.plus + v.plus + 1 };
      memo.emplace( interval{ p, q }, result );
      return result;
    };
    return count( count, 1, n );
  }
  }
}

/// One row of a complexity table.
struct complexity_record
{
  std::int64_t n = 0;
  std::string method;
  std::uint64_t T_measured = 0;
  std::uint64_t P_measured = 0;
  std::uint64_t T_predicted = 0;
  std::uint64_t P_predicted = 0;
  bool equivalent = false;
};

} // namespace fibexpr
