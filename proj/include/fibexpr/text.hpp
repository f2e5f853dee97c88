#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "expression.hpp"

namespace fibexpr
{

namespace detail
{

inline void format_into( expr const& e, std::string& out )
{
  switch ( e.kind() )
  {
  case node_kind::unit:
    out += '1';
    return;
  case node_kind::zero:
    out += '0';
    return;
  case node_kind::term:
  {
    auto l = e.term_label();
    out += l.kind == label_kind::a ? 'a' : 'b';
    out += std::to_string( l.index );
    return;
  }
  case node_kind::sum:
  {
    bool first = true;
    for ( auto const& child : e.children() )
    {
      if ( !first )
        out += '+';
      first = false;
      format_into( child, out );
    }
    return;
  }
  case node_kind::product:
    for ( auto const& child : e.children() )
    {
      if ( child.is( node_kind::sum ) )
      {
        out += '(';
        format_into( child, out );
        out += ')';
      }
      else
      {
        // "a1" followed by "1" would read back as "a11".
        if ( ( child.is( node_kind::unit ) || child.is( node_kind::zero ) ) && !out.empty() &&
             std::isdigit( static_cast<unsigned char>( out.back() ) ) )
          out += '*';
        format_into( child, out );
      }
    }
    return;
  }
}

class parser
{
public:
  explicit parser( std::string_view text ) : text_( text ) {}

  expr parse_all()
  {
    auto result = parse_sum();
    skip_space();
    if ( pos_ != text_.size() )
      throw syntax_error( pos_, std::string( "unexpected '" ) + text_[pos_] + "'" );
    return result;
  }

private:
  static constexpr std::size_t max_depth = 10'000;

  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  bool at_factor_start()
  {
    skip_space();
    if ( pos_ >= text_.size() )
      return false;
    char c = text_[pos_];
    return c == 'a' || c == 'b' || c == '(' || std::isdigit( static_cast<unsigned char>( c ) );
  }

  expr parse_sum()
  {
    std::vector<expr> operands{ parse_product() };
    skip_space();
    while ( pos_ < text_.size() && text_[pos_] == '+' )
    {
      ++pos_;
      operands.push_back( parse_product() );
      skip_space();
    }
    return make_sum( operands );
  }

  expr parse_product()
  {
    std::vector<expr> operands{ parse_factor() };
    for ( ;; )
    {
      skip_space();
      if ( pos_ < text_.size() && text_[pos_] == '*' )
      {
        ++pos_;
        operands.push_back( parse_factor() );
      }
      else if ( at_factor_start() )
        operands.push_back( parse_factor() );
      else
        break;
    }
    return make_product( operands );
  }

  expr parse_factor()
  {
    skip_space();
    if ( pos_ >= text_.size() )
      throw syntax_error( pos_, "unexpected end of input" );
    auto const start = pos_;
    char c = text_[pos_];
    if ( c == '(' )
    {
      if ( ++depth_ > max_depth )
        throw syntax_error( pos_, "parentheses nested too deeply" );
      ++pos_;
      auto inner = parse_sum();
      skip_space();
      if ( pos_ >= text_.size() || text_[pos_] != ')' )
        throw syntax_error( pos_, "expected ')'" );
      ++pos_;
      --depth_;
      return inner;
    }
    if ( c == 'a' || c == 'b' )
    {
      ++pos_;
      auto index = parse_number();
      if ( !index )
        throw syntax_error( pos_, "expected label index" );
      if ( *index < 1 || *index > std::numeric_limits<std::uint32_t>::max() )
        throw syntax_error( start, "label index out of range" );
      label l{ c == 'a' ? label_kind::a : label_kind::b, static_cast<std::uint32_t>( *index ) };
      auto [it, inserted] = terms_.try_emplace( l );
      if ( inserted )
        it->second = expr::term( l );
      return it->second;
    }
    if ( std::isdigit( static_cast<unsigned char>( c ) ) )
    {
      auto value = parse_number();
      if ( value == 1u )
        return expr::unit();
      if ( value == 0u )
        return expr::zero();
      throw syntax_error( start, "only the constants 0 and 1 are allowed" );
    }
    throw syntax_error( pos_, std::string( "unexpected '" ) + c + "'" );
  }

  std::optional<std::uint64_t> parse_number()
  {
    auto const start = pos_;
    std::uint64_t value = 0;
    while ( pos_ < text_.size() && std::isdigit( static_cast<unsigned char>( text_[pos_] ) ) )
    {
      if ( value > std::numeric_limits<std::uint32_t>::max() )
        throw syntax_error( start, "number too large" );
      value = value * 10 + static_cast<std::uint64_t>( text_[pos_] - '0' );
      ++pos_;
    }
    if ( pos_ == start )
      return std::nullopt;
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  std::map<label, expr> terms_;
};

} // namespace detail

/*! \brief Renders `e` in the expression grammar.

  Products use juxtaposition and only sums inside products are
  parenthesized, e.g. `(a1a2+b1)a3+a1b2`. Zero renders as `0`.
*/
inline std::string format( expr const& e )
{
  std::string out;
  detail::format_into( e, out );
  return out;
}

/*! \brief Parses the expression grammar into a simplified expression.

      sum     := product ('+' product)*
      product := factor (('*')? factor)*
      factor  := label | '1' | '0' | '(' sum ')'
      label   := ('a'|'b') decimal-integer

  Whitespace is ignored. Throws `syntax_error` carrying the offset of the
  offending character.
*/
inline expr parse( std::string_view text ) { return detail::parser( text ).parse_all(); }

} // namespace fibexpr
