#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include <fibexpr/expression.hpp>
#include <fibexpr/modular.hpp>
#include <fibexpr/polynomial.hpp>
#include <fibexpr/text.hpp>

using namespace fibexpr;

namespace
{

expr t( label l ) { return expr::term( l ); }

bool is_simplified( expr const& e, bool top = true )
{
  switch ( e.kind() )
  {
  case node_kind::zero:
  case node_kind::unit:
    return top;
  case node_kind::term:
    return true;
  case node_kind::sum:
  case node_kind::product:
    for ( auto const& c : e.children() )
    {
      if ( c.kind() == e.kind() || c.is( node_kind::zero ) )
        return false;
      if ( c.is( node_kind::unit ) && e.is( node_kind::product ) )
        return false;
      if ( !c.is( node_kind::unit ) && !is_simplified( c, false ) )
        return false;
    }
    return true;
  }
  return false;
}

/// Random raw expressions over a fixed label pool.
class expr_generator
{
public:
  expr_generator( std::uint32_t seed, std::vector<label> pool ) : rng_( seed ), pool_( std::move( pool ) ) {}

  expr next( int depth = 4 )
  {
    std::uniform_int_distribution<int> pick( 0, depth > 0 ? 9 : 4 );
    auto choice = pick( rng_ );
    if ( choice == 0 )
      return expr::unit();
    if ( choice == 1 )
      return expr::zero();
    if ( choice <= 4 )
      return t( pool_[std::uniform_int_distribution<std::size_t>( 0, pool_.size() - 1 )( rng_ )] );
    std::vector<expr> children;
    auto count = std::uniform_int_distribution<int>( 2, 3 )( rng_ );
    for ( int k = 0; k < count; ++k )
      children.push_back( next( depth - 1 ) );
    return choice <= 7 ? expr::product( std::move( children ) ) : expr::sum( std::move( children ) );
  }

  /// Series-parallel composition over fresh labels.
  expr next_series_parallel( int depth, std::uint32_t& fresh )
  {
    if ( depth == 0 || std::uniform_int_distribution<int>( 0, 2 )( rng_ ) == 0 )
      return t( a( fresh++ ) );
    auto lhs = next_series_parallel( depth - 1, fresh );
    auto rhs = next_series_parallel( depth - 1, fresh );
    return std::uniform_int_distribution<int>( 0, 1 )( rng_ ) ? sp_series( lhs, rhs ) : sp_parallel( lhs, rhs );
  }

private:
  std::mt19937 rng_;
  std::vector<label> pool_;
};

std::vector<label> pool_of( std::uint32_t count )
{
  std::vector<label> pool;
  for ( std::uint32_t k = 1; k <= count; ++k )
    pool.push_back( k % 2 ? a( ( k + 1 ) / 2 ) : b( k / 2 ) );
  return pool;
}

std::optional<monomial_set> try_expand( expr const& e )
{
  try
  {
    return expand( e );
  }
  catch ( error const& )
  {
    return std::nullopt;
  }
}

} // namespace

TEST_CASE( "metric_terms counts term leaves only", "[expr]" )
{
  CHECK( metric_terms( t( a( 1 ) ) ) == 1 );
  CHECK( metric_terms( expr::unit() ) == 0 );
  CHECK( metric_terms( expr::zero() ) == 0 );
  CHECK( metric_terms( expr::product( { expr::unit(), t( a( 1 ) ), t( a( 1 ) ) } ) ) == 2 );
}

TEST_CASE( "metric_plus counts children minus one per sum", "[expr]" )
{
  CHECK( metric_plus( t( a( 1 ) ) ) == 0 );
  CHECK( metric_plus( parse( "a1a2+b1" ) ) == 1 );
  CHECK( metric_plus( parse( "(a1a2+b1)(a3a4+b3)+a1b2a4" ) ) == 3 );
}

TEST_CASE( "metrics count shared subexpressions once per occurrence", "[expr]" )
{
  auto const shared = parse( "a1+b1" );
  auto const e = expr::product( { shared, shared, shared } );
  CHECK( metric_terms( e ) == 6 );
  CHECK( metric_plus( e ) == 3 );
}

TEST_CASE( "simplify absorbs unit, annihilates with zero and flattens", "[expr]" )
{
  CHECK( simplify( expr::product( { expr::unit(), t( a( 1 ) ) } ) ) == t( a( 1 ) ) );
  CHECK( simplify( expr::sum( { expr::product( { expr::zero(), t( a( 1 ) ) } ), t( b( 1 ) ) } ) ) == t( b( 1 ) ) );
  CHECK( simplify( expr::product( { t( a( 1 ) ), expr::product( { t( a( 2 ) ), t( a( 3 ) ) } ) } ) ) ==
         expr::product( { t( a( 1 ) ), t( a( 2 ) ), t( a( 3 ) ) } ) );
  CHECK( simplify( expr::product( { expr::unit(), expr::unit() } ) ) == expr::unit() );
  CHECK( simplify( expr::sum( { expr::zero(), expr::zero() } ) ) == expr::zero() );
  CHECK( simplify( expr::sum( { expr::unit(), t( a( 1 ) ) } ) ) == expr::sum( { expr::unit(), t( a( 1 ) ) } ) );
}

TEST_CASE( "sum and product nodes need two children", "[expr]" )
{
  CHECK_THROWS_AS( expr::sum( { t( a( 1 ) ) } ), std::invalid_argument );
  CHECK_THROWS_AS( expr::product( {} ), std::invalid_argument );
}

TEST_CASE( "expand produces the path monomials", "[expr]" )
{
  CHECK( expand( parse( "a1a2+b1" ) ) == monomial_set( { monomial{ a( 1 ), a( 2 ) }, monomial{ b( 1 ) } } ) );
  CHECK( expand( expr::zero() ).empty() );
  CHECK( expand( expr::unit() ) == monomial_set( { monomial{} } ) );
}

TEST_CASE( "expand reports malformed factorings", "[expr]" )
{
  auto kind_of = []( expr const& e ) {
    try
    {
      expand( e );
    }
    catch ( error const& ex )
    {
      return ex.kind();
    }
    FAIL( "expected an error" );
    return error_kind::invalid_n;
  };
  CHECK( kind_of( parse( "a1+a1" ) ) == error_kind::duplicate_monomial );
  CHECK( kind_of( parse( "(a1+a2b1)(b1+1)" ) ) == error_kind::repeated_label );
  CHECK( kind_of( parse( "a1a1" ) ) == error_kind::repeated_label );
  CHECK( expand( parse( "(a1+b1)(a2+b2)(a3+b3)" ) ).size() == 8 );

  auto const wide = parse( "(a1+b1)(a2+b2)(a3+b3)(a4+b4)" );
  CHECK_THROWS_MATCHES( expand( wide, { 15 } ), error,
                        Catch::Matchers::Predicate<error>( []( error const& ex ) { return ex.kind() == error_kind::size_exceeded; } ) );
  CHECK( expand( wide, { 16 } ).size() == 16 );
}

TEST_CASE( "evaluate_mod computes the value modulo a prime", "[expr]" )
{
  assignment v( 101 );
  v.set( a( 1 ), 2 );
  v.set( a( 2 ), 3 );
  v.set( b( 1 ), 5 );
  CHECK( evaluate_mod( parse( "a1a2+b1" ), v ) == 11 );
  CHECK( evaluate_mod( expr::unit(), v ) == 1 );
  CHECK( evaluate_mod( expr::zero(), v ) == 0 );
  CHECK_THROWS_AS( evaluate_mod( parse( "a1a3" ), v ), error );
}

TEST_CASE( "assignment requires a prime below 2^32", "[expr]" )
{
  CHECK_THROWS_AS( assignment( 100 ), error );
  CHECK_THROWS_AS( assignment( 1 ), error );
  CHECK_THROWS_AS( assignment( 4294967311ull ), error );
  CHECK_NOTHROW( assignment( 4294967291ull ) );
  CHECK( assignment( 7 ).prime() == 7 );
}

TEST_CASE( "parse reads the grammar", "[text]" )
{
  CHECK( parse( "a1a2+b1" ) == expr::sum( { expr::product( { t( a( 1 ) ), t( a( 2 ) ) } ), t( b( 1 ) ) } ) );
  CHECK( parse( " a1 * a2 + b1 " ) == parse( "a1a2+b1" ) );
  CHECK( parse( "(a1a2+b1)a3+a1b2" ) ==
         expr::sum( { expr::product( { parse( "a1a2+b1" ), t( a( 3 ) ) } ), expr::product( { t( a( 1 ) ), t( b( 2 ) ) } ) } ) );
  CHECK( parse( "1" ) == expr::unit() );
  CHECK( parse( "1a5" ) == t( a( 5 ) ) );
  CHECK( parse( "a12" ) == t( a( 12 ) ) );
  CHECK( parse( "((a1))" ) == t( a( 1 ) ) );
}

TEST_CASE( "parse reports the position of syntax errors", "[text]" )
{
  auto position_of = []( std::string const& text ) -> std::size_t {
    try
    {
      parse( text );
    }
    catch ( syntax_error const& ex )
    {
      return ex.position();
    }
    return std::string::npos;
  };
  CHECK( position_of( "a1+" ) == 3 );
  CHECK( position_of( "(a1" ) == 3 );
  CHECK( position_of( "a" ) == 1 );
  CHECK( position_of( "a0" ) == 0 );
  CHECK( position_of( "a1+2" ) == 3 );
  CHECK( position_of( "c1" ) == 0 );
  CHECK( position_of( "a1)" ) == 2 );
  CHECK( position_of( "" ) == 0 );
  CHECK( position_of( "a99999999999" ) == 1 );
  CHECK( position_of( std::string( 20000, '(' ) + "a1" ) != std::string::npos );
}

TEST_CASE( "format uses juxtaposition and parenthesizes sums inside products", "[text]" )
{
  CHECK( format( parse( "(a1a2+b1)a3+a1b2" ) ) == "(a1a2+b1)a3+a1b2" );
  CHECK( format( parse( "((a1 a2) + (b1))  * a3 + a1*b2" ) ) == "(a1a2+b1)a3+a1b2" );
  CHECK( format( expr::zero() ) == "0" );
  CHECK( format( expr::product( { t( a( 1 ) ), expr::unit() } ) ) == "a1*1" );
  CHECK( parse( format( expr::product( { t( a( 1 ) ), expr::unit() } ) ) ) == t( a( 1 ) ) );
}

TEST_CASE( "series-parallel composition", "[expr]" )
{
  auto const e = sp_series( t( a( 1 ) ), sp_parallel( t( a( 2 ) ), t( b( 2 ) ) ) );
  CHECK( e == expr::product( { t( a( 1 ) ), expr::sum( { t( a( 2 ) ), t( b( 2 ) ) } ) } ) );
  CHECK( is_read_once( e ) );
  CHECK_FALSE( is_read_once( parse( "(a1a2+b1)a3+a1b2" ) ) );
  CHECK( is_read_once( expr::unit() ) );
}

TEST_CASE( "series-parallel example factors read-once", "[expr]" )
{
  // s -a-> x, x -{b,c}-> y, s -f-> y, y -{d,e}-> t
  auto const la = a( 1 ), lb = a( 2 ), lc = b( 2 ), ld = a( 3 ), le = b( 3 ), lf = b( 1 );
  auto const e = sp_series( sp_parallel( sp_series( t( la ), sp_parallel( t( lb ), t( lc ) ) ), t( lf ) ),
                            sp_parallel( t( ld ), t( le ) ) );
  CHECK( format( e ) == "(a1(a2+b2)+b1)(a3+b3)" );
  CHECK( expand( e ) == monomial_set( { monomial{ la, lb, ld }, monomial{ la, lb, le }, monomial{ la, lc, ld },
                                        monomial{ la, lc, le }, monomial{ lf, ld }, monomial{ lf, le } } ) );
  CHECK( is_read_once( e ) );
  CHECK( metric_terms( e ) == 6 );
}

TEST_CASE( "property: simplify preserves expansion and never adds terms", "[expr][property]" )
{
  expr_generator gen( 7, pool_of( 8 ) );
  int checked = 0;
  for ( int k = 0; k < 2000; ++k )
  {
    auto const e = gen.next();
    auto const s = simplify( e );
    REQUIRE( is_simplified( s ) );
    REQUIRE( metric_terms( s ) <= metric_terms( e ) );
    REQUIRE( simplify( s ) == s );
    if ( auto expanded = try_expand( e ) )
    {
      REQUIRE( expand( s ) == *expanded );
      ++checked;
    }
  }
  CHECK( checked > 200 );
}

TEST_CASE( "property: evaluate_mod equals the sum over the expansion, all assignments", "[expr][property]" )
{
  // exhaustive over GF(2) with 12 labels and GF(3) with 7 labels
  for ( auto [prime, labels] : { std::pair<std::uint64_t, std::uint32_t>{ 2, 12 }, { 3, 7 } } )
  {
    auto const pool = pool_of( labels );
    expr_generator gen( 11 + labels, pool );
    int checked = 0;
    for ( int k = 0; k < 400 && checked < 30; ++k )
    {
      auto const e = gen.next();
      auto expanded = try_expand( e );
      if ( !expanded )
        continue;
      ++checked;
      std::uint64_t combos = 1;
      for ( std::uint32_t j = 0; j < labels; ++j )
        combos *= prime;
      for ( std::uint64_t code = 0; code < combos; ++code )
      {
        assignment v( prime );
        auto rest = code;
        for ( auto l : pool )
        {
          v.set( l, rest % prime );
          rest /= prime;
        }
        std::uint64_t expected = 0;
        for ( auto const& m : *expanded )
        {
          std::uint64_t product = 1;
          for ( auto l : m.labels() )
            product = product * *v.get( l ) % prime;
          expected = ( expected + product ) % prime;
        }
        REQUIRE( evaluate_mod( e, v ) == expected );
      }
    }
    CHECK( checked == 30 );
  }
}

TEST_CASE( "property: parse inverts format", "[text][property]" )
{
  expr_generator gen( 3, pool_of( 10 ) );
  for ( int k = 0; k < 2000; ++k )
  {
    auto const e = gen.next( 5 );
    auto const s = simplify( e );
    auto const text = format( s );
    REQUIRE( parse( text ) == s );
    REQUIRE( format( parse( text ) ) == text );
    REQUIRE( parse( format( e ) ) == s );
    REQUIRE( metric_plus( s ) == static_cast<std::uint64_t>( std::count( text.begin(), text.end(), '+' ) ) );
  }
}

TEST_CASE( "property: series-parallel compositions over fresh labels are read-once", "[expr][property]" )
{
  expr_generator gen( 5, pool_of( 1 ) );
  for ( int k = 0; k < 500; ++k )
  {
    std::uint32_t fresh = 1;
    auto const e = gen.next_series_parallel( 6, fresh );
    REQUIRE( is_read_once( e ) );
    REQUIRE( metric_terms( e ) == fresh - 1 );
  }
}
