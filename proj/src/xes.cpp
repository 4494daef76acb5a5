#include "ecsea/xes.hpp"

#include "ecsea/errors.hpp"
#include "ecsea/timestamp.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>

namespace ecsea {

namespace pt = boost::property_tree;

namespace {

bool is_attribute_element(const std::string& tag) {
  return tag == "string" || tag == "date" || tag == "int" || tag == "float" ||
         tag == "boolean" || tag == "id";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

} // namespace

EventLog parse_xes(const std::string& bytes) {
  pt::ptree doc;
  try {
    std::istringstream in(bytes);
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw InputError("XES: malformed XML: line " + std::to_string(e.line()) +
                     ": " + e.message());
  }

  auto log_node = doc.get_child_optional("log");
  if (!log_node) throw InputError("XES: missing <log> root element");

  EventLog log;
  std::size_t ingest = 0;
  std::size_t trace_number = 0;
  for (const auto& [tag, trace_node] : *log_node) {
    if (tag != "trace") continue;
    ++trace_number;

    std::string case_id;
    for (const auto& [child_tag, child] : trace_node) {
      if (!is_attribute_element(child_tag)) continue;
      if (child.get<std::string>("<xmlattr>.key", "") == "concept:name")
        case_id = child.get<std::string>("<xmlattr>.value", "");
    }
    if (case_id.empty())
      throw InputError("XES: trace " + std::to_string(trace_number) +
                       " has no concept:name");

    std::size_t event_index = 0;
    for (const auto& [child_tag, event_node] : trace_node) {
      if (child_tag != "event") continue;
      ++event_index;

      Event event;
      event.case_id = case_id;
      event.ingest_index = ingest++;
      bool have_time = false;
      for (const auto& [attr_tag, attr] : event_node) {
        if (!is_attribute_element(attr_tag)) continue;
        const std::string key = attr.get<std::string>("<xmlattr>.key", "");
        const std::string value = attr.get<std::string>("<xmlattr>.value", "");
        if (key.empty()) continue;
        if (key == "concept:name") {
          event.activity = value;
        } else if (key == "time:timestamp") {
          auto ts = parse_timestamp_ms(value);
          if (!ts)
            throw InputError("XES: trace \"" + case_id + "\" event " +
                             std::to_string(event_index) +
                             ": unparseable time:timestamp \"" + value + "\"");
          event.timestamp_ms = *ts;
          have_time = true;
        } else {
          event.attributes[key] = value;
        }
      }
      if (event.activity.empty())
        throw InputError("XES: trace \"" + case_id + "\" event " +
                         std::to_string(event_index) + ": missing concept:name");
      if (!have_time)
        throw InputError("XES: trace \"" + case_id + "\" event " +
                         std::to_string(event_index) +
                         ": missing time:timestamp");
      log.add_event(std::move(event));
    }
  }
  log.finalize();
  return log;
}

std::string write_xes(const EventLog& log) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<log xes.version=\"1.0\" xes.features=\"\">\n";
  out << "  <extension name=\"Concept\" prefix=\"concept\" "
         "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  out << "  <extension name=\"Time\" prefix=\"time\" "
         "uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  for (const auto& [case_id, trace] : log.traces()) {
    out << "  <trace>\n";
    out << "    <string key=\"concept:name\" value=\"" << xml_escape(case_id)
        << "\"/>\n";
    for (const Event& e : trace.events) {
      out << "    <event>\n";
      out << "      <string key=\"concept:name\" value=\""
          << xml_escape(e.activity) << "\"/>\n";
      out << "      <date key=\"time:timestamp\" value=\""
          << format_timestamp_ms(e.timestamp_ms) << "\"/>\n";
      for (const auto& [key, value] : e.attributes)
        out << "      <string key=\"" << xml_escape(key) << "\" value=\""
            << xml_escape(value) << "\"/>\n";
      out << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
  return out.str();
}

} // namespace ecsea
