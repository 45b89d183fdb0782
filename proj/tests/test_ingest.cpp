#include <doctest.h>

#include <fstream>
#include <sstream>

#include "credrisk/error.hpp"
#include "credrisk/ingest/arff.hpp"
#include "credrisk/ingest/german_credit.hpp"
#include "credrisk/ingest/transaction.hpp"

using namespace credrisk;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Dataset load_german() {
  std::ifstream in(CREDRISK_DATA_DIR "/german.data");
  REQUIRE(in);
  return parse_german_credit(in);
}

const char* kSmallArff = R"(% toy
@relation toy
@attribute colour {red, green}
@attribute size {small,large}
@attribute class {yes,no}
@data
red,small,yes
green,large,no
red,large,yes
)";

}  // namespace

TEST_CASE("money parses to minor units") {
  CHECK(parse_money("237.90").minor == 23790);
  CHECK(parse_money("25").minor == 2500);
  CHECK(parse_money("0.5").minor == 50);
  CHECK(parse_money("0").minor == 0);
  CHECK_THROWS_AS(parse_money("-1.00"), Error);
  CHECK_THROWS_AS(parse_money("1.234"), Error);
  CHECK_THROWS_AS(parse_money("abc"), Error);
  CHECK_THROWS_AS(parse_money(""), Error);
  CHECK(format_money(Money{23790}) == "237.90");
  CHECK(format_money(Money{5}) == "0.05");
}

TEST_CASE("dates") {
  auto d = parse_date("2017-01-20");
  CHECK(format_date(d) == "2017-01-20");
  CHECK(days_between(parse_date("2016-12-31"), d) == 20);
  CHECK_THROWS_AS(parse_date("2017-02-30"), Error);
  CHECK_THROWS_AS(parse_date("20-01-2017"), Error);
  CHECK_THROWS_AS(parse_date("2017-1-20"), Error);
}

TEST_CASE("german credit file") {
  auto ds = load_german();
  CHECK(ds.size() == 1000);
  CHECK(ds.attributes().size() == 21);
  CHECK(ds.schema.class_labels() == std::vector<std::string>{"good", "bad"});
  auto counts = ds.class_counts();
  CHECK(counts[0] == 700);
  CHECK(counts[1] == 300);
  ds.validate();

  // First row: A11 6 A34 A43 1169 ... 1
  const auto& row = ds.rows[0];
  CHECK(ds.attributes()[0].domain[static_cast<std::size_t>(row[0])] == "A11");
  CHECK(row[1] == 6);
  CHECK(row[4] == 1169);
  CHECK(ds.class_of(row) == 0);
}

TEST_CASE("german credit errors name line and attribute") {
  std::istringstream bad("A11 6 A34 A43 1169 A65 A75 4 A93 A101 4 A121 67 A143 A152 2 A173 1 A192 A201 1\n"
                         "A19 6 A34 A43 1169 A65 A75 4 A93 A101 4 A121 67 A143 A152 2 A173 1 A192 A201 1\n");
  auto msg = error_of([&] { parse_german_credit(bad); });
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("status_of_existing_checking_account") != std::string::npos);
  CHECK(msg.find("A19") != std::string::npos);

  std::istringstream short_row("A11 6 A34\n");
  CHECK_THROWS_AS(parse_german_credit(short_row), Error);
}

TEST_CASE("arff basics") {
  std::istringstream in(kSmallArff);
  auto ds = parse_arff(in);
  CHECK(ds.name == "toy");
  CHECK(ds.size() == 3);
  CHECK(ds.attributes().size() == 3);
  CHECK(ds.class_index() == 2);
  CHECK(ds.class_counts() == std::vector<std::size_t>{2, 1});

  std::istringstream empty("@relation e\n@attribute a {x,y}\n@attribute c {p,q}\n@data\n");
  auto e = parse_arff(empty);
  CHECK(e.empty());
  CHECK(e.attributes().size() == 2);
}

TEST_CASE("arff rejects undeclared values and unsupported features") {
  std::istringstream bad("@relation t\n@attribute colour {a,b}\n@attribute c {p,q}\n@data\nx,p\n");
  auto msg = error_of([&] { parse_arff(bad); });
  CHECK(msg.find("colour") != std::string::npos);

  std::istringstream str("@relation t\n@attribute s string\n@attribute c {p,q}\n@data\n");
  CHECK(error_of([&] { parse_arff(str); }).find("unsupported ARFF feature") != std::string::npos);

  std::istringstream missing("@relation t\n@attribute a numeric\n@attribute c {p,q}\n@data\n?,p\n");
  CHECK(error_of([&] { parse_arff(missing); }).find("unsupported ARFF feature") != std::string::npos);

  std::istringstream early("@relation t\n@attribute a numeric\n1\n");
  CHECK_THROWS_AS(parse_arff(early), Error);
}

TEST_CASE("arff round trip") {
  auto ds = load_german();
  std::ostringstream out;
  write_arff(out, ds);
  std::istringstream in(out.str());
  auto back = parse_arff(in);
  CHECK(back.schema == ds.schema);
  CHECK(back.rows == ds.rows);

  std::ostringstream again;
  write_arff(again, back);
  CHECK(again.str() == out.str());

  // Plain names stay bare; names with spaces or quotes get single quotes.
  CHECK(out.str().find("@attribute credit_history {") != std::string::npos);
  Dataset odd;
  odd.name = "my data";
  odd.schema.attributes = {AttributeSpec::numeric("it's"), AttributeSpec::nominal("class", {"a b", "c"})};
  odd.schema.class_index = 1;
  odd.rows = {{1.5, 0}};
  std::ostringstream o;
  write_arff(o, odd);
  CHECK(o.str().find("@relation 'my data'") != std::string::npos);
  CHECK(o.str().find("@attribute 'it\\'s' numeric") != std::string::npos);
  CHECK(o.str().find("{'a b',c}") != std::string::npos);
  std::istringstream oi(o.str());
  auto odd_back = parse_arff(oi);
  CHECK(odd_back.schema == odd.schema);
  CHECK(odd_back.rows == odd.rows);
}

TEST_CASE("transaction record") {
  auto txn = parse_transaction_line(
      R"({"tid":"1","account":"1","date":"2017-01-20","description":"SOUTHWES52 68506576536 800-435-9792 TX","amount":"237.90","category":"Airlines"})");
  CHECK(txn.tid == "1");
  CHECK(txn.account_id == "1");
  CHECK(txn.amount.minor == 23790);
  CHECK(txn.category == "Airlines");
  CHECK(format_date(txn.date) == "2017-01-20");
  CHECK_FALSE(txn.location.has_value());

  auto zero = parse_transaction_line(
      R"({"tid":"2","account":"1","date":"2017-01-20","description":"","amount":"0","category":"Fees"})");
  CHECK(zero.amount.minor == 0);
}

TEST_CASE("transaction errors name the field") {
  auto no_cat = error_of([] {
    parse_transaction_line(R"({"tid":"1","account":"1","date":"2017-01-20","description":"x","amount":"1.00"})");
  });
  CHECK(no_cat.find("category") != std::string::npos);

  auto neg = error_of([] {
    parse_transaction_line(
        R"({"tid":"1","account":"1","date":"2017-01-20","description":"x","amount":"-1.00","category":"A"})");
  });
  CHECK(neg.find("amount") != std::string::npos);

  auto date = error_of([] {
    parse_transaction_line(
        R"({"tid":"1","account":"1","date":"yesterday","description":"x","amount":"1.00","category":"A"})");
  });
  CHECK(date.find("date") != std::string::npos);

  CHECK_THROWS_AS(parse_transaction_line("not json"), Error);
}

TEST_CASE("transaction round trip") {
  Transaction t;
  t.tid = "42";
  t.account_id = "7";
  t.date = parse_date("2017-03-04");
  t.description = "WM SUPERCENTER #657 \"COOKEVILLE\" TN";
  t.amount = Money{10288};
  t.category = "Supermarkets";
  t.location = Location{{36.1628, -85.5016}, "US"};
  t.context = {ContextFlag::job_switch, ContextFlag::out_of_country};
  CHECK(parse_transaction_line(to_line(t)) == t);
  CHECK(transaction_from_json(to_json(t)) == t);
}
