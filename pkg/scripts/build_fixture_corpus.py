#!/usr/bin/env python3
"""Regenerate the bundled fixture corpus under src/tablesense/data/corpus/.

Every page is written from the literals below; labels go to corpus.jsonl in
the order the tables are declared.  Run from the repository root.
"""

import html
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "tablesense" / "data" / "corpus"


def data_table(rows, header=True, attrs='class="data"'):
    out = [f"<table {attrs}>"]
    for i, row in enumerate(rows):
        tag = "th" if header and i == 0 else "td"
        cells = "".join(f"<{tag}>{html.escape(c)}</{tag}>" for c in row)
        out.append(f"  <tr>{cells}</tr>")
    out.append("</table>")
    return "\n".join(out)


def vertical_table(rows, attrs='class="compare"'):
    out = [f"<table {attrs}>"]
    for row in rows:
        out.append(f"  <tr><th>{html.escape(row[0])}</th>"
                   + "".join(f"<td>{html.escape(c)}</td>" for c in row[1:]) + "</tr>")
    out.append("</table>")
    return "\n".join(out)


def page(title, *blocks, charset="utf-8"):
    body = "\n<p>Lorem ipsum context paragraph.</p>\n".join(blocks)
    return (f'<!DOCTYPE html>\n<html><head><meta charset="{charset}">'
            f"<title>{html.escape(title)}</title></head>\n<body>\n<h1>{html.escape(title)}</h1>\n"
            f"{body}\n</body></html>\n")


# -- genuine, header row ----------------------------------------------------

CONTACTS = [
    ["Name", "City", "Phone", "e-mail"],
    ["Ivanov I. I.", "Berlin", "1112233", "ivanov@mail.de"],
    ["Petrov P.P", "Berlin", "2223344", "petrov@mail.de"],
    ["Sidorov S. S.", "Moscow", "3334455", "sidorov@ya.ru"],
    ["Pupkin V.V.", "Moscow", "4445566", "pupkinv@gmail.com"],
]

COUNTRIES = [
    ["Country", "Capital", "Population", "Area (km2)"],
    ["Germany", "Berlin", "83,200,000", "357,022"],
    ["France", "Paris", "67,750,000", "643,801"],
    ["Italy", "Rome", "59,110,000", "301,340"],
    ["Spain", "Madrid", "47,420,000", "505,990"],
    ["Poland", "Warsaw", "37,750,000", "312,696"],
    ["Austria", "Vienna", "8,956,000", "83,879"],
]

STANDINGS = [
    ["Team", "Played", "Won", "Drawn", "Lost", "Points"],
    ["Zenit", "30", "21", "6", "3", "69"],
    ["Spartak", "30", "18", "5", "7", "59"],
    ["CSKA", "30", "16", "8", "6", "56"],
    ["Lokomotiv", "30", "15", "7", "8", "52"],
    ["Krasnodar", "30", "14", "9", "7", "51"],
    ["Dynamo", "30", "12", "8", "10", "44"],
    ["Rostov", "30", "10", "9", "11", "39"],
]

BOOKS = [
    ["Title", "Author", "Year", "ISBN"],
    ["War and Peace", "Leo Tolstoy", "1869", "978-0199232765"],
    ["Crime and Punishment", "Fyodor Dostoevsky", "1866", "978-0143107637"],
    ["Dead Souls", "Nikolai Gogol", "1842", "978-0140448078"],
    ["Fathers and Sons", "Ivan Turgenev", "1862", "978-0199536047"],
    ["The Master and Margarita", "Mikhail Bulgakov", "1967", "978-0141180144"],
]

TRAINS = [
    ["Train", "Destination", "Departure", "Arrival", "Platform"],
    ["ICE 1023", "Hamburg", "08:14", "10:02", "4"],
    ["ICE 1525", "Munich", "08:37", "12:41", "7"],
    ["RE 4410", "Potsdam", "08:52", "09:31", "2"],
    ["IC 2041", "Cologne", "09:05", "13:22", "11"],
    ["ICE 877", "Frankfurt", "09:18", "13:10", "6"],
    ["RB 5521", "Cottbus", "09:26", "10:49", "1"],
]

STOCKS = [
    ["Ticker", "Open", "Close", "Change", "Volume"],
    ["AAPL", "189.31", "191.45", "+1.13%", "52,164,300"],
    ["MSFT", "402.10", "398.77", "-0.83%", "21,880,100"],
    ["GOOG", "141.52", "142.90", "+0.98%", "18,402,700"],
    ["AMZN", "174.05", "176.31", "+1.30%", "33,051,900"],
    ["NVDA", "870.20", "881.86", "+1.34%", "44,315,200"],
]

PLANETS = [
    ["Planet", "Diameter (km)", "Moons", "Orbital period (days)"],
    ["Mercury", "4,879", "0", "88"],
    ["Venus", "12,104", "0", "225"],
    ["Earth", "12,756", "1", "365"],
    ["Mars", "6,792", "2", "687"],
    ["Jupiter", "142,984", "95", "4,331"],
    ["Saturn", "120,536", "146", "10,747"],
]

STAFF = [
    ["Name", "Position", "Room", "Phone"],
    ["Dr. Anna Weber", "Professor", "A-214", "+49 228 73-4401"],
    ["Dr. Jens Richter", "Lecturer", "A-216", "+49 228 73-4407"],
    ["Maria Schulz", "Research Assistant", "B-103", "+49 228 73-4415"],
    ["Tobias Klein", "Research Assistant", "B-105", "+49 228 73-4418"],
    ["Petra Braun", "Secretary", "A-201", "+49 228 73-4400"],
]

ELECTION = [
    ["Candidate", "Party", "Votes", "Share"],
    ["M. Hoffmann", "Green", "48,210", "31.4%"],
    ["K. Becker", "Social", "41,977", "27.3%"],
    ["L. Wagner", "Liberal", "29,505", "19.2%"],
    ["S. Fischer", "Conservative", "24,118", "15.7%"],
    ["R. Neumann", "Independent", "9,870", "6.4%"],
]

PRICES = [
    ["Product", "SKU", "Price", "In stock"],
    ["USB-C cable 1m", "CB-1001", "$9.99", "yes"],
    ["USB-C cable 2m", "CB-1002", "$12.99", "yes"],
    ["HDMI cable 2m", "CB-2002", "$14.49", "no"],
    ["Wireless mouse", "MS-3100", "$24.90", "yes"],
    ["Keyboard", "KB-4200", "$49.00", "yes"],
    ["Laptop stand", "ST-5010", "$39.95", "no"],
]

WEATHER = [
    ["City", "High", "Low", "Conditions"],
    ["Saint Petersburg", "12°C", "5°C", "Rain"],
    ["Moscow", "14°C", "6°C", "Cloudy"],
    ["Kazan", "15°C", "7°C", "Cloudy"],
    ["Sochi", "22°C", "15°C", "Sunny"],
    ["Novosibirsk", "9°C", "1°C", "Snow"],
]

ROADS_RU = [
    ["Улица", "Район", "Начало работ", "Окончание", "Подрядчик"],
    ["Невский проспект", "Центральный", "01.05.2014", "30.06.2014", "ООО Дорстрой"],
    ["Садовая улица", "Адмиралтейский", "15.05.2014", "15.07.2014", "ЗАО Мостотрест"],
    ["Литейный проспект", "Центральный", "01.06.2014", "31.08.2014", "ООО Дорстрой"],
    ["Московский проспект", "Московский", "10.06.2014", "10.09.2014", "ООО Асфальт"],
    ["Лиговский проспект", "Фрунзенский", "20.06.2014", "20.09.2014", "ЗАО Мостотрест"],
]

# -- genuine, header column -------------------------------------------------

PHONES = [
    ["Model", "Alpha X", "Beta 12", "Gamma Pro"],
    ["Screen", "6.1 in", "6.7 in", "6.4 in"],
    ["Battery", "3,200 mAh", "4,500 mAh", "4,000 mAh"],
    ["Weight", "172 g", "204 g", "187 g"],
    ["Storage", "128 GB", "256 GB", "128 GB"],
    ["Price", "$699", "$899", "$799"],
]

CITIES_V = [
    ["City", "Berlin", "Moscow", "Paris", "Madrid"],
    ["Country", "Germany", "Russia", "France", "Spain"],
    ["Population", "3,645,000", "12,506,000", "2,161,000", "3,223,000"],
    ["Area", "891 km2", "2,511 km2", "105 km2", "604 km2"],
    ["Founded", "1237", "1147", "259 BC", "865"],
]

CARS = [
    ["Specification", "Sedan S", "Estate E", "Coupe C"],
    ["Engine", "2.0 L", "2.0 L", "3.0 L"],
    ["Power", "190 hp", "190 hp", "340 hp"],
    ["Top speed", "235 km/h", "228 km/h", "250 km/h"],
    ["Fuel use", "6.4 l/100km", "6.8 l/100km", "8.9 l/100km"],
    ["Price", "€41,900", "€44,300", "€58,700"],
]

PLAYERS = [
    ["Player", "A. Kerzhakov", "D. Sychev", "R. Pavlyuchenko"],
    ["Club", "Zenit", "Lokomotiv", "Spartak"],
    ["Goals", "23", "14", "18"],
    ["Assists", "7", "5", "9"],
    ["Minutes", "2,610", "1,980", "2,344"],
]

LAPTOPS = [
    ["Laptop", "Air 13", "Book 15", "Work 14"],
    ["CPU", "M2 8-core", "i7-1360P", "Ryzen 7 7840U"],
    ["Memory", "8 GB", "16 GB", "32 GB"],
    ["Display", "13.6 in", "15.6 in", "14.0 in"],
    ["Battery life", "18 h", "11 h", "14 h"],
    ["Weight", "1.24 kg", "1.80 kg", "1.39 kg"],
]

HOTELS = [
    ["Hotel", "Park Inn", "Grand Palace", "City Hostel"],
    ["Stars", "3", "5", "1"],
    ["Price per night", "€89", "€310", "€24"],
    ["Distance to centre", "1.2 km", "0.3 km", "2.5 km"],
    ["Guest rating", "8.1", "9.4", "7.2"],
]

PLANS = [
    ["Plan", "Basic", "Pro", "Enterprise"],
    ["Monthly price", "$5", "$15", "$49"],
    ["Storage", "10 GB", "100 GB", "1 TB"],
    ["Users", "1", "5", "unlimited"],
    ["Support", "email", "email and chat", "24/7 phone"],
]

CAMERAS = [
    ["Camera", "EOS R8", "Z6 II", "A7 IV", "X-T5"],
    ["Sensor", "24.2 MP", "24.5 MP", "33.0 MP", "40.2 MP"],
    ["ISO range", "100-102400", "100-51200", "100-51200", "125-12800"],
    ["Weight", "461 g", "705 g", "658 g", "557 g"],
    ["Video", "4K 60p", "4K 60p", "4K 60p", "6.2K 30p"],
]

COUNTRIES_V = [
    ["Indicator", "Norway", "Sweden", "Finland", "Denmark"],
    ["Capital", "Oslo", "Stockholm", "Helsinki", "Copenhagen"],
    ["Currency", "NOK", "SEK", "EUR", "DKK"],
    ["GDP per capita", "$89,150", "$55,690", "$50,540", "$67,790"],
    ["Life expectancy", "83.2", "83.0", "81.9", "81.4"],
]

ELEMENTS_V = [
    ["Element", "Hydrogen", "Helium", "Lithium"],
    ["Symbol", "H", "He", "Li"],
    ["Atomic number", "1", "2", "3"],
    ["Atomic mass", "1.008", "4.0026", "6.94"],
    ["Discovered", "1766", "1868", "1817"],
]

# -- non-genuine layout tables ----------------------------------------------

NAV_GRID = """<table class="nav" width="100%">
  <tr><td><a href="/">Home</a></td><td><a href="/about">About us</a></td><td><a href="/products">Products</a></td><td><a href="/contact">Contact</a></td></tr>
  <tr><td><a href="/blog">Blog</a></td><td><a href="/jobs">Careers</a></td><td><a href="/press">Press room</a></td><td><a href="/help">Help</a></td></tr>
</table>"""

PAGE_LAYOUT = """<table width="100%" cellpadding="0" cellspacing="0" border="0">
  <tr><td colspan="2"><img src="logo.png" alt=""> Welcome to the Riverside Community Portal</td></tr>
  <tr><td width="180"><a href="/news">News</a><br><a href="/events">Events</a><br><a href="/clubs">Clubs</a></td>
      <td>The annual riverside festival returns this summer with music, food stalls and a boat parade along the embankment. Volunteers are welcome to register at the town hall.</td></tr>
  <tr><td>&nbsp;</td><td>Copyright 2014 Riverside Community Association. All rights reserved.</td></tr>
</table>"""

LOGIN_FORM = """<table class="login">
  <tr><td>Username</td><td><input name="user"></td></tr>
  <tr><td>Password</td><td><input type="password" name="pw"></td></tr>
  <tr><td></td><td><input type="submit" value="Log in"> <a href="/reset">Forgot your password?</a></td></tr>
</table>"""

FOOTER = """<table class="footer" width="100%">
  <tr><td><a href="/privacy">Privacy policy</a> | <a href="/terms">Terms of use</a> | <a href="/imprint">Imprint</a></td><td align="right">Follow us</td></tr>
  <tr><td>&copy; 2015 Example Media Group GmbH, all content is protected by copyright law and may not be reproduced</td><td><a href="https://twitter.com/example">Twitter</a> <a href="https://facebook.com/example">Facebook</a></td></tr>
</table>"""

NEWSLETTER = """<table width="600" align="center">
  <tr><td><img src="header.jpg" alt="Spring newsletter"></td><td>Issue 14</td></tr>
  <tr><td colspan="2">Dear reader, this month we look back at a busy spring season with three new product launches and a record attendance at our open day.</td></tr>
  <tr><td>Read more on our website</td><td><a href="/unsubscribe">Unsubscribe</a></td></tr>
</table>"""

SIDEBAR = """<table class="sidebar">
  <tr><td><img src="i/home.gif" alt=""></td><td><a href="/">Start page</a></td></tr>
  <tr><td><img src="i/doc.gif" alt=""></td><td><a href="/docs">Documentation and manuals for all versions</a></td></tr>
  <tr><td><img src="i/dl.gif" alt=""></td><td><a href="/download">Download</a></td></tr>
  <tr><td><img src="i/mail.gif" alt=""></td><td><a href="/list">Mailing list archive</a></td></tr>
</table>"""

BANNER = """<table border="0" width="100%">
  <tr><td><a href="/ad/1"><img src="banner1.gif" alt="Sale"></a></td><td>SUMMER SALE: up to 50 percent off selected items while stocks last</td></tr>
  <tr><td></td><td><a href="/shop">Shop now</a></td></tr>
</table>"""

FORUM_POST = """<table class="post">
  <tr><td>posted by <b>ivan_k</b></td><td>Re: best route from the airport to the city centre?</td></tr>
  <tr><td>Member since 2009<br>Posts: 1,432</td><td>I usually take the express bus to the metro station and then change to the green line, it takes about forty minutes in total and is much cheaper than a taxi.</td></tr>
  <tr><td><a href="/report">Report</a></td><td><a href="/reply">Reply</a> <a href="/quote">Quote</a></td></tr>
</table>"""

DIRECTORY = """<table class="dir">
  <tr><td><b>News</b></td><td><a href="/w">World</a>, <a href="/e">Europe</a>, <a href="/b">Business</a>, <a href="/t">Technology</a></td></tr>
  <tr><td><b>Sport</b></td><td><a href="/f">Football</a>, <a href="/h">Hockey</a>, <a href="/te">Tennis</a>, <a href="/m">Motorsport</a></td></tr>
  <tr><td><b>Leisure</b></td><td><a href="/tr">Travel</a>, <a href="/fo">Food and drink</a>, <a href="/c">Culture</a>, <a href="/g">Games</a></td></tr>
</table>"""

PAGINATION = """<table class="pager">
  <tr><td><a href="?p=1">&laquo; Previous</a></td><td><a href="?p=1">1</a></td><td><b>2</b></td><td><a href="?p=3">3</a></td><td><a href="?p=3">Next &raquo;</a></td></tr>
  <tr><td colspan="5">Showing results 11 to 20 of 248 matching your search</td></tr>
</table>"""

SEARCH_BOX = """<table>
  <tr><td><input type="text" name="q" placeholder="Search"></td><td><input type="submit" value="Go"></td></tr>
  <tr><td><a href="/advanced">Advanced search</a></td><td></td></tr>
</table>"""

EMAIL_TEMPLATE = """<table width="100%" bgcolor="#eeeeee">
  <tr><td>&nbsp;</td><td>Your order has been shipped and should arrive within three to five working days.</td><td>&nbsp;</td></tr>
  <tr><td>&nbsp;</td><td><a href="/track">Track your parcel</a></td><td>&nbsp;</td></tr>
</table>"""

SHARE_BAR = """<table class="share">
  <tr><td>Share this article:</td><td><a href="#fb">Facebook</a></td><td><a href="#tw">Twitter</a></td><td><a href="#vk">VK</a></td></tr>
  <tr><td colspan="4">Comments are closed for this article after thirty days, please contact the editors</td></tr>
</table>"""

ARTICLE_LAYOUT = """<table cellpadding="4">
  <tr><td valign="top"><img src="photo.jpg" alt=""><br>Photo: press service</td>
      <td valign="top">The city administration announced on Monday that repairs on the main bridge will continue until the end of the month, and traffic will be diverted through the northern district.</td></tr>
  <tr><td>&nbsp;</td><td><a href="/news/archive">More news from the city</a></td></tr>
</table>"""

LANGUAGE_BAR = """<table align="right">
  <tr><td><a href="/en">English</a></td><td><a href="/de">Deutsch</a></td></tr>
  <tr><td><a href="/ru">Русский</a></td><td><a href="/fr">Français</a></td></tr>
</table>"""

CONTACT_BLOCK = """<table>
  <tr><td><b>Visit us</b></td><td>Main Street 12, 53113 Bonn, opposite the central station</td></tr>
  <tr><td><b>Opening hours</b></td><td>Monday to Friday from nine in the morning until six</td></tr>
  <tr><td colspan="2"><a href="/map">Show on map</a></td></tr>
</table>"""

OUTER_LAYOUT_START = """<table width="100%"><tr><td width="200">
"""
OUTER_LAYOUT_END = """
</td><td>Sidebar advertising space</td></tr></table>"""

POLL = """<table class="poll">
  <tr><td colspan="2">Which topic should our next issue cover in detail?</td></tr>
  <tr><td><input type="radio" name="v"></td><td>Public transport and city cycling infrastructure</td></tr>
  <tr><td><input type="radio" name="v"></td><td>Housing prices in the suburbs</td></tr>
  <tr><td></td><td><input type="submit" value="Vote"> <a href="/poll/results">See results</a></td></tr>
</table>"""

TOOLBAR = """<table class="toolbar">
  <tr><td><a href="javascript:print()">Print</a></td><td><a href="/rss">RSS feed</a></td><td><a href="mailto:editor@example.org">Send to a friend</a></td></tr>
  <tr><td colspan="2">Last updated: 14 September 2014, 18:05 by the editorial team</td><td><a href="#top">Back to top</a></td></tr>
</table>"""


def main():
    pages = {}
    labels = []

    def add(name, html_text, tables, charset="utf-8"):
        pages[name] = (html_text, charset)
        for idx, (genuine, orientation) in enumerate(tables):
            labels.append({"document_path": f"pages/{name}", "table_index": idx,
                           "genuine": genuine, "orientation": orientation})

    H, V, N = (True, "horizontal"), (True, "vertical"), (False, None)

    add("contacts.html", page("Contacts", data_table(CONTACTS)), [H])
    add("countries.html", page("European countries", NAV_GRID, data_table(COUNTRIES)), [N, H])
    add("standings.html", page("League table", data_table(STANDINGS), PAGINATION), [H, N])
    add("books.html", page("Russian classics", data_table(BOOKS), SHARE_BAR), [H, N])
    add("trains.html", page("Departures", data_table(TRAINS)), [H])
    add("stocks.html", page("Market close", BANNER, data_table(STOCKS)), [N, H])
    add("planets.html", page("Planets", data_table(PLANETS), FOOTER), [H, N])
    add("staff.html", page("Department staff", SIDEBAR, data_table(STAFF)), [N, H])
    add("election.html", page("District election", data_table(ELECTION), TOOLBAR), [H, N])
    add("prices.html", page("Cables and accessories", SEARCH_BOX, data_table(PRICES)), [N, H])
    add("weather.html", page("Forecast", data_table(WEATHER), LANGUAGE_BAR), [H, N])
    add("roads.html", page("Ремонт дорог", data_table(ROADS_RU), charset="windows-1251"), [H],
        charset="windows-1251")

    add("phones.html", page("Phone comparison", vertical_table(PHONES)), [V])
    add("cities.html", page("City facts", OUTER_LAYOUT_START + vertical_table(CITIES_V) + OUTER_LAYOUT_END), [V])
    add("cars.html", page("Model range", vertical_table(CARS), CONTACT_BLOCK), [V, N])
    add("players.html", page("Top scorers", vertical_table(PLAYERS)), [V])
    add("laptops.html", page("Laptops compared", LOGIN_FORM, vertical_table(LAPTOPS)), [N, V])
    add("hotels.html", page("Hotels", vertical_table(HOTELS), NEWSLETTER), [V, N])
    add("plans.html", page("Pricing", vertical_table(PLANS)), [V])
    add("cameras.html", page("Mirrorless cameras", vertical_table(CAMERAS), FORUM_POST), [V, N])
    add("nordics.html", page("Nordic countries", vertical_table(COUNTRIES_V)), [V])
    add("elements.html", page("Light elements", vertical_table(ELEMENTS_V), DIRECTORY), [V, N])

    add("portal.html", page("Community portal", PAGE_LAYOUT, POLL), [N, N])
    add("news.html", page("City news", ARTICLE_LAYOUT, EMAIL_TEMPLATE), [N, N])

    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "pages").mkdir(exist_ok=True)
    for name, (text, charset) in pages.items():
        (OUT / "pages" / name).write_bytes(text.encode(charset))
    with open(OUT / "corpus.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for entry in labels:
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")
    genuine = sum(e["genuine"] for e in labels)
    print(f"{len(labels)} tables: {genuine} genuine, {len(labels) - genuine} non-genuine")


if __name__ == "__main__":
    main()
