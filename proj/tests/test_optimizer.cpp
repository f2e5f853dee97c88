#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include <catch_amalgamated.hpp>

#include <fibexpr.hpp>

using namespace fibexpr;

namespace
{

/// Every expression the decomposition rule can produce for (p, q), with
/// each sub-interval free to pick its own vertex.
std::vector<expr> const& all_decompositions( vertex p, vertex q, std::map<interval, std::vector<expr>>& memo )
{
  if ( auto it = memo.find( { p, q } ); it != memo.end() )
    return it->second;
  std::vector<expr> result;
  if ( q == p )
    result.push_back( expr::unit() );
  else if ( q == p + 1 )
    result.push_back( expr::term( a( static_cast<std::uint32_t>( p ) ) ) );
  else
    for ( vertex i = p + 1; i < q; ++i )
    {
      auto const& left = all_decompositions( p, i, memo );
      auto const& right = all_decompositions( i, q, memo );
      auto const& before = all_decompositions( p, i - 1, memo );
      auto const& after = all_decompositions( i + 1, q, memo );
      auto const jump = expr::term( b( static_cast<std::uint32_t>( i - 1 ) ) );
      for ( auto const& x : left )
        for ( auto const& y : right )
          for ( auto const& u : before )
            for ( auto const& v : after )
              result.push_back( make_sum( { make_product( { x, y } ), make_product( { u, jump, v } ) } ) );
    }
  return memo.emplace( interval{ p, q }, std::move( result ) ).first->second;
}

struct brute_minimum
{
  std::uint64_t value = UINT64_MAX;
  std::vector<vertex> argmin;
};

/// Minimum of a metric over all decompositions of (1, n), and the first
/// vertices attaining it.
brute_minimum brute_force( vertex n, metric which )
{
  std::map<interval, std::vector<expr>> memo;
  auto measure = [which]( expr const& e ) { return which == metric::terms ? metric_terms( e ) : metric_plus( e ); };
  brute_minimum best;
  for ( vertex i = 2; i < n; ++i )
  {
    std::uint64_t local = UINT64_MAX;
    // restrict the top-level split to i by rebuilding just that level
    for ( auto const& x : all_decompositions( 1, i, memo ) )
      for ( auto const& y : all_decompositions( i, n, memo ) )
        for ( auto const& u : all_decompositions( 1, i - 1, memo ) )
          for ( auto const& v : all_decompositions( i + 1, n, memo ) )
            local = std::min( local, measure( make_sum( { make_product( { x, y } ),
                                                          make_product( { u, expr::term( b( static_cast<std::uint32_t>( i - 1 ) ) ), v } ) } ) ) );
    if ( local < best.value )
    {
      best.value = local;
      best.argmin.clear();
    }
    if ( local == best.value )
      best.argmin.push_back( i );
  }
  return best;
}

} // namespace

TEST_CASE( "recurrence values", "[optimize]" )
{
  std::vector<std::uint64_t> const T{ 0, 1, 3, 6, 9, 14, 19, 25, 31, 39, 47, 57 };
  std::vector<std::uint64_t> const P{ 0, 0, 1, 2, 3, 5, 7, 9, 11, 14, 17, 21 };
  for ( std::size_t k = 0; k < T.size(); ++k )
  {
    CHECK( recurrence_T( static_cast<std::int64_t>( k + 1 ) ) == T[k] );
    CHECK( recurrence_P( static_cast<std::int64_t>( k + 1 ) ) == P[k] );
  }
  CHECK( recurrence_T( 1024 ) == 415061 );
  CHECK_THROWS_AS( recurrence_T( 0 ), error );
  CHECK_THROWS_AS( recurrence_P( -1 ), error );
}

TEST_CASE( "interval minima for small graphs", "[optimize]" )
{
  auto const nine = min_metric( 9, metric::terms );
  CHECK( nine.min_value( 1, 9 ) == 31 );
  CHECK( nine.argmin( 1, 9 ) == std::vector<vertex>{ 5 } );
  CHECK( nine.min_value( 3, 5 ) == 3 );
  CHECK( nine.argmin( 2, 3 ).empty() );

  auto const four = min_metric( 4, metric::terms );
  CHECK( four.min_value( 1, 4 ) == 6 );
  CHECK( four.argmin( 1, 4 ) == std::vector<vertex>{ 2, 3 } );

  auto const seven = min_metric( 7, metric::plus );
  CHECK( seven.argmin( 1, 7 ) == std::vector<vertex>{ 3, 4, 5 } );
  CHECK( min_metric( 7, metric::terms ).argmin( 1, 7 ) == std::vector<vertex>{ 4 } );
  CHECK_THROWS_AS( min_metric( 0, metric::terms ), error );
}

TEST_CASE( "dynamic program agrees with exhaustive enumeration", "[optimize]" )
{
  for ( vertex n = 3; n <= 8; ++n )
    for ( auto which : { metric::terms, metric::plus } )
    {
      auto const table = min_metric( n, which );
      auto const brute = brute_force( n, which );
      CAPTURE( n, to_string( which ) );
      REQUIRE( table.min_value( 1, n ) == brute.value );
      REQUIRE( table.argmin( 1, n ) == brute.argmin );
    }
}

TEST_CASE( "minima equal the middle-split recurrences", "[optimize]" )
{
  auto const terms = min_metric( 256, metric::terms );
  auto const plus = min_metric( 256, metric::plus );
  for ( vertex n = 1; n <= 256; ++n )
  {
    CAPTURE( n );
    REQUIRE( terms.min_value( 1, n ) == recurrence_T( n ) );
    REQUIRE( plus.min_value( 1, n ) == recurrence_P( n ) );
  }
}

TEST_CASE( "minima are translation invariant", "[optimize]" )
{
  auto const table = min_metric( 20, metric::terms );
  for ( vertex p = 1; p <= 10; ++p )
    for ( vertex q = p; q <= 20; ++q )
      REQUIRE( table.min_value( p, q ) == min_metric( q - p + 1, metric::terms ).min_value( 1, q - p + 1 ) );
}

TEST_CASE( "terms are minimized exactly at the middle vertices", "[optimize]" )
{
  auto const report = verify_middle_optimality( 40 );
  CHECK( report.passed() );
  CHECK( report.intervals_checked == 9880 );
}

TEST_CASE( "special values of the plus count", "[optimize]" )
{
  auto const report = special_values( 127 );
  std::vector<interval> const groups{ { 7, 7 }, { 13, 15 }, { 25, 31 }, { 49, 63 }, { 97, 127 } };
  CHECK( report.groups == groups );
  CHECK( report.groups_match );
  CHECK( std::find( report.values.begin(), report.values.end(), 9 ) == report.values.end() );
  CHECK( predicted_special_groups( 63 ) == std::vector<interval>{ { 7, 7 }, { 13, 15 }, { 25, 31 }, { 49, 63 } } );
  CHECK( special_values( 6 ).values.empty() );
}

TEST_CASE( "doubling bound on the recurrences", "[optimize]" )
{
  for ( std::int64_t k = 1; k <= 128; ++k )
  {
    CAPTURE( k );
    REQUIRE( recurrence_T( 2 * k ) <= 4 * recurrence_T( k ) + 3 );
    REQUIRE( recurrence_P( 2 * k ) <= 4 * recurrence_P( k ) + 2 );
  }
}

TEST_CASE( "predicted metrics match the generated expressions", "[optimize]" )
{
  std::vector<method> const methods{ method::middle(), method::middle( tie::high ), method::left(), method::with_seed( 4 ),
                                     method::gd( 3 ), method::gd( 4, tie::high ), method::gd( 6 ) };
  for ( auto const& how : methods )
    for ( vertex n = 1; n <= 40; ++n )
    {
      auto const e = build_expression( n, how );
      auto const predicted = predicted_metrics( n, how );
      CAPTURE( to_string( how.kind ), n );
      REQUIRE( predicted.terms == metric_terms( e ) );
      REQUIRE( predicted.plus == metric_plus( e ) );
    }
  for ( vertex n = 2; n <= 20; ++n )
  {
    auto const e = canonical_expression( n );
    auto const predicted = predicted_metrics( n, method::canonical() );
    REQUIRE( predicted.terms == metric_terms( e ) );
    REQUIRE( predicted.plus == metric_plus( e ) );
  }
}

TEST_CASE( "complexity table rows", "[optimize]" )
{
  auto const rows = complexity_table( 8, 10, method::middle() );
  REQUIRE( rows.size() == 3 );
  CHECK( to_csv( rows[1] ) == "9,middle,31,11,31,11,true" );
  CHECK( csv_header() == "n,method,T_measured,P_measured,T_predicted,P_predicted,equivalent" );
  auto const big = measure( 100, method::gd( 3 ) );
  CHECK( big.equivalent );
  CHECK( big.T_measured == big.T_predicted );
}

TEST_CASE( "exponent fit", "[optimize]" )
{
  auto const slope = exponent_fit( 2, { 64, 128, 256, 512 } );
  CHECK( slope == Catch::Approx( 2.0 ).margin( 0.15 ) );
  auto fails_with = []( std::int64_t m, std::vector<std::int64_t> list ) {
    try
    {
      exponent_fit( m, list );
    }
    catch ( error const& ex )
    {
      return ex.kind();
    }
    return error_kind::invalid_n;
  };
  CHECK( fails_with( 2, { 64, 128, 256 } ) == error_kind::degenerate_fit );
  CHECK( fails_with( 2, { 64, 128, 128, 256 } ) == error_kind::degenerate_fit );
  CHECK( fails_with( 2, { 2, 4, 8, 16 } ) == error_kind::degenerate_fit );
  CHECK( fails_with( 1, { 64, 128, 256, 512 } ) == error_kind::invalid_m );
}
