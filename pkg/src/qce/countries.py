"""Country identity: ISO 3166-1 alpha-3 codes and the name forms that map to them.

Names are matched after folding case, accents and punctuation, so
"Korea, Rep", "Korea, Rep." and "KOREA REP" are the same key.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Mapping, Optional, Union

# code: (display name, *aliases)
_TABLE: dict[str, tuple[str, ...]] = {
    "AFG": ("Afghanistan",),
    "ALA": ("Aland Islands",),
    "ALB": ("Albania",),
    "DZA": ("Algeria",),
    "ASM": ("American Samoa",),
    "AND": ("Andorra",),
    "AGO": ("Angola",),
    "AIA": ("Anguilla",),
    "ATA": ("Antarctica",),
    "ATG": ("Antigua and Barbuda",),
    "ARG": ("Argentina",),
    "ARM": ("Armenia",),
    "ABW": ("Aruba",),
    "AUS": ("Australia",),
    "AUT": ("Austria",),
    "AZE": ("Azerbaijan",),
    "BHS": ("Bahamas", "Bahamas, The", "The Bahamas"),
    "BHR": ("Bahrain",),
    "BGD": ("Bangladesh",),
    "BRB": ("Barbados",),
    "BLR": ("Belarus",),
    "BEL": ("Belgium",),
    "BLZ": ("Belize",),
    "BEN": ("Benin",),
    "BMU": ("Bermuda",),
    "BTN": ("Bhutan",),
    "BOL": ("Bolivia", "Bolivia (Plurinational State of)", "Plurinational State of Bolivia"),
    "BES": ("Bonaire, Sint Eustatius and Saba",),
    "BIH": ("Bosnia and Herzegovina", "Bosnia & Herzegovina", "Bosnia-Herzegovina"),
    "BWA": ("Botswana",),
    "BVT": ("Bouvet Island",),
    "BRA": ("Brazil",),
    "IOT": ("British Indian Ocean Territory",),
    "BRN": ("Brunei Darussalam", "Brunei"),
    "BGR": ("Bulgaria",),
    "BFA": ("Burkina Faso",),
    "BDI": ("Burundi",),
    "CPV": ("Cabo Verde", "Cape Verde"),
    "KHM": ("Cambodia",),
    "CMR": ("Cameroon",),
    "CAN": ("Canada",),
    "CYM": ("Cayman Islands",),
    "CAF": ("Central African Republic", "Central African Rep"),
    "TCD": ("Chad",),
    "CHL": ("Chile",),
    "CHN": ("China", "People's Republic of China", "China, People's Rep"),
    "CXR": ("Christmas Island",),
    "CCK": ("Cocos (Keeling) Islands",),
    "COL": ("Colombia",),
    "COM": ("Comoros",),
    "COG": ("Congo, Rep", "Republic of the Congo", "Congo Republic", "Congo-Brazzaville", "Congo"),
    "COD": (
        "Congo, Dem Rep",
        "Democratic Republic of the Congo",
        "Congo, Democratic Republic of the",
        "DR Congo",
        "Congo-Kinshasa",
    ),
    "COK": ("Cook Islands",),
    "CRI": ("Costa Rica",),
    "CIV": ("Cote d'Ivoire", "Ivory Coast"),
    "HRV": ("Croatia",),
    "CUB": ("Cuba",),
    "CUW": ("Curacao",),
    "CYP": ("Cyprus",),
    "CZE": ("Czech Republic", "Czechia"),
    "DNK": ("Denmark",),
    "DJI": ("Djibouti",),
    "DMA": ("Dominica",),
    "DOM": ("Dominican Republic", "Dominican Rep"),
    "ECU": ("Ecuador",),
    "EGY": ("Egypt", "Egypt, Arab Rep", "Arab Republic of Egypt"),
    "SLV": ("El Salvador",),
    "GNQ": ("Equatorial Guinea",),
    "ERI": ("Eritrea",),
    "EST": ("Estonia",),
    "SWZ": ("Eswatini", "Swaziland"),
    "ETH": ("Ethiopia",),
    "FLK": ("Falkland Islands",),
    "FRO": ("Faroe Islands",),
    "FJI": ("Fiji",),
    "FIN": ("Finland",),
    "FRA": ("France",),
    "GUF": ("French Guiana",),
    "PYF": ("French Polynesia",),
    "ATF": ("French Southern Territories",),
    "GAB": ("Gabon",),
    "GMB": ("Gambia", "Gambia, The", "The Gambia"),
    "GEO": ("Georgia",),
    "DEU": ("Germany",),
    "GHA": ("Ghana",),
    "GIB": ("Gibraltar",),
    "GRC": ("Greece",),
    "GRL": ("Greenland",),
    "GRD": ("Grenada",),
    "GLP": ("Guadeloupe",),
    "GUM": ("Guam",),
    "GTM": ("Guatemala",),
    "GGY": ("Guernsey",),
    "GIN": ("Guinea",),
    "GNB": ("Guinea-Bissau",),
    "GUY": ("Guyana",),
    "HTI": ("Haiti",),
    "HMD": ("Heard Island and McDonald Islands",),
    "VAT": ("Holy See", "Vatican City"),
    "HND": ("Honduras",),
    "HKG": ("Hong Kong", "Hong Kong SAR, China", "Hong Kong SAR", "Hong Kong, China"),
    "HUN": ("Hungary",),
    "ISL": ("Iceland",),
    "IND": ("India",),
    "IDN": ("Indonesia",),
    "IRN": ("Iran", "Iran, Islamic Rep", "Islamic Republic of Iran", "Iran (Islamic Republic of)"),
    "IRQ": ("Iraq",),
    "IRL": ("Ireland",),
    "IMN": ("Isle of Man",),
    "ISR": ("Israel",),
    "ITA": ("Italy",),
    "JAM": ("Jamaica",),
    "JPN": ("Japan",),
    "JEY": ("Jersey",),
    "JOR": ("Jordan",),
    "KAZ": ("Kazakhstan",),
    "KEN": ("Kenya",),
    "KIR": ("Kiribati",),
    "PRK": ("Korea, Dem People's Rep", "North Korea", "Democratic People's Republic of Korea"),
    "KOR": ("Korea, Rep", "South Korea", "Republic of Korea", "Korea, South", "Korea"),
    "KWT": ("Kuwait",),
    "KGZ": ("Kyrgyz Republic", "Kyrgyzstan"),
    "LAO": ("Lao PDR", "Laos", "Lao People's Democratic Republic"),
    "LVA": ("Latvia",),
    "LBN": ("Lebanon",),
    "LSO": ("Lesotho",),
    "LBR": ("Liberia",),
    "LBY": ("Libya",),
    "LIE": ("Liechtenstein",),
    "LTU": ("Lithuania",),
    "LUX": ("Luxembourg",),
    "MAC": ("Macao", "Macau", "Macao SAR, China"),
    "MDG": ("Madagascar",),
    "MWI": ("Malawi",),
    "MYS": ("Malaysia",),
    "MDV": ("Maldives",),
    "MLI": ("Mali",),
    "MLT": ("Malta",),
    "MHL": ("Marshall Islands",),
    "MTQ": ("Martinique",),
    "MRT": ("Mauritania",),
    "MUS": ("Mauritius",),
    "MYT": ("Mayotte",),
    "MEX": ("Mexico",),
    "FSM": ("Micronesia", "Micronesia, Fed Sts"),
    "MDA": ("Moldova", "Republic of Moldova"),
    "MCO": ("Monaco",),
    "MNG": ("Mongolia",),
    "MNE": ("Montenegro",),
    "MSR": ("Montserrat",),
    "MAR": ("Morocco",),
    "MOZ": ("Mozambique",),
    "MMR": ("Myanmar", "Burma"),
    "NAM": ("Namibia",),
    "NRU": ("Nauru",),
    "NPL": ("Nepal",),
    "NLD": ("Netherlands", "The Netherlands"),
    "NCL": ("New Caledonia",),
    "NZL": ("New Zealand",),
    "NIC": ("Nicaragua",),
    "NER": ("Niger",),
    "NGA": ("Nigeria",),
    "NIU": ("Niue",),
    "NFK": ("Norfolk Island",),
    "MKD": ("North Macedonia", "Macedonia", "Macedonia, FYR", "Republic of North Macedonia"),
    "MNP": ("Northern Mariana Islands",),
    "NOR": ("Norway",),
    "OMN": ("Oman",),
    "PAK": ("Pakistan",),
    "PLW": ("Palau",),
    "PSE": ("Palestine", "West Bank and Gaza", "State of Palestine"),
    "PAN": ("Panama",),
    "PNG": ("Papua New Guinea",),
    "PRY": ("Paraguay",),
    "PER": ("Peru",),
    "PHL": ("Philippines",),
    "PCN": ("Pitcairn",),
    "POL": ("Poland",),
    "PRT": ("Portugal",),
    "PRI": ("Puerto Rico",),
    "QAT": ("Qatar",),
    "REU": ("Reunion",),
    "ROU": ("Romania",),
    "RUS": ("Russia", "Russian Federation"),
    "RWA": ("Rwanda",),
    "BLM": ("Saint Barthelemy",),
    "SHN": ("Saint Helena",),
    "KNA": ("Saint Kitts and Nevis", "St Kitts and Nevis"),
    "LCA": ("Saint Lucia", "St Lucia"),
    "MAF": ("Saint Martin",),
    "SPM": ("Saint Pierre and Miquelon",),
    "VCT": ("Saint Vincent and the Grenadines", "St Vincent and the Grenadines"),
    "WSM": ("Samoa",),
    "SMR": ("San Marino",),
    "STP": ("Sao Tome and Principe",),
    "SAU": ("Saudi Arabia",),
    "SEN": ("Senegal",),
    "SRB": ("Serbia",),
    "SYC": ("Seychelles",),
    "SLE": ("Sierra Leone",),
    "SGP": ("Singapore",),
    "SXM": ("Sint Maarten",),
    "SVK": ("Slovak Republic", "Slovakia"),
    "SVN": ("Slovenia",),
    "SLB": ("Solomon Islands",),
    "SOM": ("Somalia",),
    "ZAF": ("South Africa",),
    "SGS": ("South Georgia and the South Sandwich Islands",),
    "SSD": ("South Sudan",),
    "ESP": ("Spain",),
    "LKA": ("Sri Lanka",),
    "SDN": ("Sudan",),
    "SUR": ("Suriname",),
    "SJM": ("Svalbard and Jan Mayen",),
    "SWE": ("Sweden",),
    "CHE": ("Switzerland",),
    "SYR": ("Syria", "Syrian Arab Republic"),
    "TWN": ("Taiwan", "Taiwan, China", "Chinese Taipei"),
    "TJK": ("Tajikistan",),
    "TZA": ("Tanzania", "United Republic of Tanzania"),
    "THA": ("Thailand",),
    "TLS": ("Timor-Leste", "East Timor"),
    "TGO": ("Togo",),
    "TKL": ("Tokelau",),
    "TON": ("Tonga",),
    "TTO": ("Trinidad and Tobago", "Trinidad & Tobago"),
    "TUN": ("Tunisia",),
    "TUR": ("Turkey", "Turkiye"),
    "TKM": ("Turkmenistan",),
    "TCA": ("Turks and Caicos Islands",),
    "TUV": ("Tuvalu",),
    "UGA": ("Uganda",),
    "UKR": ("Ukraine",),
    "ARE": ("United Arab Emirates", "UAE"),
    "GBR": ("United Kingdom", "UK", "Great Britain", "Britain"),
    "USA": ("United States", "USA", "United States of America", "US"),
    "UMI": ("United States Minor Outlying Islands",),
    "URY": ("Uruguay",),
    "UZB": ("Uzbekistan",),
    "VUT": ("Vanuatu",),
    "VEN": ("Venezuela", "Venezuela, RB", "Bolivarian Republic of Venezuela"),
    "VNM": ("Vietnam", "Viet Nam"),
    "VGB": ("British Virgin Islands",),
    "VIR": ("US Virgin Islands", "Virgin Islands (U.S.)"),
    "WLF": ("Wallis and Futuna",),
    "ESH": ("Western Sahara",),
    "YEM": ("Yemen", "Yemen, Rep"),
    "ZMB": ("Zambia",),
    "ZWE": ("Zimbabwe",),
    # Kosovo has no ISO assignment; XKX is the user-assigned code in common use.
    "XKX": ("Kosovo",),
}

_PUNCT = re.compile(r"[^\w\s]")
_SPACE = re.compile(r"\s+")


def fold(name: str) -> str:
    """Case-, accent- and punctuation-insensitive key for a country name."""
    text = unicodedata.normalize("NFKD", name)
    text = "".join(c for c in text if not unicodedata.combining(c))
    text = text.replace("&", " and ")
    text = _PUNCT.sub(" ", text.casefold())
    return _SPACE.sub(" ", text).strip()


_BY_KEY: dict[str, str] = {}
for _code, _names in _TABLE.items():
    for _name in _names:
        _BY_KEY.setdefault(fold(_name), _code)


def is_code(code: str) -> bool:
    return code in _TABLE


def display_name(code: str) -> str:
    names = _TABLE.get(code)
    return names[0] if names else code


@dataclass(frozen=True)
class Unresolved:
    raw: str

    def __bool__(self):
        return False


class NameOverrides(dict):
    """Raw name -> canonical code. Keys are matched after :func:`fold`."""

    def __init__(self, pairs: Optional[Mapping[str, str]] = None):
        super().__init__()
        for raw, code in (pairs or {}).items():
            code = code.strip().upper()
            if not is_code(code):
                raise ValueError(f"override {raw!r} -> {code!r}: not a known alpha-3 code")
            self[fold(raw)] = code


def normalize_country_name(raw: str, overrides: Optional[NameOverrides] = None) -> Union[str, Unresolved]:
    """Return the alpha-3 code for ``raw``, or ``Unresolved(raw)``.

    Overrides win over the built-in table. A bare alpha-3 code resolves to
    itself.
    """
    key = fold(raw or "")
    if overrides and key in overrides:
        return overrides[key]
    code = key.upper()
    if len(code) == 3 and is_code(code):
        return code
    return _BY_KEY.get(key, Unresolved(raw))
