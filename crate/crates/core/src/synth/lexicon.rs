//! Fictional lexicons. Any resemblance to real people or facilities is
//! accidental.

pub const GIVEN_NAMES: &[&str] = &[
    "John", "Mary", "Robert", "Linda", "Michael", "Susan", "David", "Karen", "James", "Nancy",
    "William", "Betty", "Richard", "Helen", "Thomas", "Sandra", "Charles", "Donna", "Daniel",
    "Carol", "Matthew", "Ruth", "Anthony", "Sharon", "Mark", "Michelle", "Steven", "Laura", "Paul",
    "Kimberly", "Andrew", "Deborah", "Joshua", "Angela", "Kevin", "Melissa", "Brian", "Rebecca",
    "Gary", "Cynthia",
];

pub const SURNAMES: &[&str] = &[
    "Smith",
    "Johnson",
    "Williams",
    "Brown",
    "Jones",
    "Garcia",
    "Miller",
    "Davis",
    "Rodriguez",
    "Martinez",
    "Hernandez",
    "Lopez",
    "Gonzalez",
    "Wilson",
    "Anderson",
    "Thomas",
    "Taylor",
    "Moore",
    "Jackson",
    "Martin",
    "Lee",
    "Perez",
    "Thompson",
    "White",
    "Harris",
    "Sanchez",
    "Clark",
    "Ramirez",
    "Lewis",
    "Robinson",
    "Walker",
    "Young",
    "Allen",
    "King",
    "Wright",
    "Scott",
    "Torres",
    "Nguyen",
    "Hill",
    "Flores",
    "Green",
    "Adams",
    "Nelson",
    "Baker",
    "Hall",
    "Rivera",
    "Campbell",
    "Mitchell",
    "Carter",
    "Roberts",
    "Kowalski",
    "Lindqvist",
    "Okafor",
    "Brennan",
    "Haugen",
    "Duval",
    "Petrakis",
    "Moreau",
    "Yamada",
    "Castellano",
];

pub const TOWNS: &[&str] = &[
    "Any Town",
    "Apple Town",
    "Maple Falls",
    "River Bend",
    "Cedar Ridge",
    "Pine Hollow",
    "Clearwater",
    "Oak Grove",
    "Fairview",
    "Brookside",
    "Millbrook",
    "Stone Creek",
    "Willow Park",
    "Eastport",
    "Granby",
    "Hartwell",
    "Lakemont",
    "Northfield",
    "Redhill",
    "Silver Lake",
    "Summerdale",
    "Thornton",
    "Westbury",
    "Ashford",
    "Bellmont",
    "Crestview",
    "Dunmore",
    "Elmwood",
    "Glenville",
    "Kingsley",
];

pub const STATE_ABBREVIATIONS: &[&str] = &[
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "FL", "GA", "HI", "ID", "IL", "IN", "IA", "KS",
    "KY", "LA", "ME", "MD", "MA", "MI", "MN", "MS", "MO", "MT", "NE", "NV", "NH", "NJ", "NM", "NY",
    "NC", "ND", "OH", "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA", "WV",
    "WI", "WY",
];

pub const STATE_NAMES: &[&str] = &[
    "Alabama",
    "Alaska",
    "Arizona",
    "Arkansas",
    "California",
    "Colorado",
    "Connecticut",
    "Delaware",
    "Florida",
    "Georgia",
    "Hawaii",
    "Idaho",
    "Illinois",
    "Indiana",
    "Iowa",
    "Kansas",
    "Kentucky",
    "Louisiana",
    "Maine",
    "Maryland",
    "Massachusetts",
    "Michigan",
    "Minnesota",
    "Mississippi",
    "Missouri",
    "Montana",
    "Nebraska",
    "Nevada",
    "New Hampshire",
    "New Jersey",
    "New Mexico",
    "New York",
    "North Carolina",
    "North Dakota",
    "Ohio",
    "Oklahoma",
    "Oregon",
    "Pennsylvania",
    "Rhode Island",
    "South Carolina",
    "South Dakota",
    "Tennessee",
    "Texas",
    "Utah",
    "Vermont",
    "Virginia",
    "Washington",
    "West Virginia",
    "Wisconsin",
    "Wyoming",
];

/// Facility patterns; `{town}` and `{surname}` are filled from the lexicons.
pub const FACILITY_PATTERNS: &[&str] = &[
    "{town} Medical Center",
    "{town} General Hospital",
    "{town} Orthopedic Associates",
    "{town} Physical Therapy",
    "{town} Urgent Care",
    "{town} Imaging Center",
    "{town} Spine Institute",
    "{town} Sports Medicine",
    "{town} Community Hospital",
    "{town} Pain Management",
    "{surname} Orthopedic Clinic",
    "{surname} Family Practice",
    "{surname} Chiropractic",
    "{surname} Rehabilitation Center",
    "{surname} Surgical Group",
    "St. {surname} Hospital",
    "Mercy Hospital of {town}",
    "Valley Regional Medical Center",
    "Lakeside Occupational Health",
    "Summit Bone and Joint",
    "Riverside Neurology",
    "Northern Radiology Partners",
];

pub const INSURERS: &[&str] = &[
    "Acme Mutual Insurance",
    "Keystone Casualty Company",
    "Harbor Workers Assurance",
    "Pinnacle Risk Services",
    "Liberty Oak Claims",
    "Granite State Indemnity",
    "Midland Employers Group",
    "Sentry Point Insurance",
    "Blue Ridge Compensation Trust",
    "Cornerstone Claims Management",
];

pub const STREET_NAMES: &[&str] = &[
    "Apple",
    "Main",
    "Oak",
    "Maple",
    "Cedar",
    "Elm",
    "Pine",
    "Walnut",
    "Chestnut",
    "Spruce",
    "Lake",
    "Hill",
    "Park",
    "Washington",
    "Lincoln",
    "Jefferson",
    "Madison",
    "Franklin",
    "Highland",
    "Meadow",
    "Sunset",
    "River",
    "Church",
    "Mill",
];

/// Street patterns; `{street}` is a street name, the suffix follows.
pub const STREET_PATTERNS: &[&str] = &[
    "{street} St.",
    "{street} Street",
    "{street} Ave.",
    "{street} Avenue",
    "{street} Rd.",
    "{street} Road",
    "{street} Blvd.",
    "{street} Boulevard",
    "{street} Ln.",
    "{street} Lane",
    "{street} Dr.",
    "{street} Drive",
    "{street} Ct.",
    "{street} Court",
    "{street} Way",
    "{street} Pl.",
    "{street} Place",
    "{street} Pkwy.",
    "{street} Terrace",
    "{street} Circle",
    "North {street} St.",
    "South {street} Ave.",
];

pub const MONTHS: &[&str] = &[
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

pub const BODY_PARTS: &[&str] = &[
    "left shoulder",
    "right shoulder",
    "lumbar spine",
    "cervical spine",
    "left knee",
    "right knee",
    "right wrist",
    "left ankle",
    "right hip",
    "left elbow",
];

pub const DIAGNOSES: &[&str] = &[
    "lumbar strain",
    "rotator cuff tear",
    "medial meniscus tear",
    "carpal tunnel syndrome",
    "cervical radiculopathy",
    "lateral epicondylitis",
    "ankle sprain",
    "degenerative disc disease",
    "patellar tendinitis",
    "contusion",
];

pub const EMPLOYERS: &[&str] = &[
    "a warehouse",
    "a grocery store",
    "a construction site",
    "a manufacturing plant",
    "a school district",
    "a trucking company",
    "a hospital laundry",
    "a call center",
];

/// Syllables composed into surnames outside the fixed list.
pub const SURNAME_HEADS: &[&str] = &[
    "Ash", "Black", "Brad", "Brook", "Cald", "Cart", "Dal", "Dun", "El", "Fair", "Gar", "Hal",
    "Hart", "Kel", "Lang", "Mar", "Mont", "Nor", "Oak", "Pem", "Ram", "Red", "Ster", "Thorn",
    "Wal", "Whit", "Win", "Yar",
];

pub const SURNAME_TAILS: &[&str] = &[
    "ley", "ton", "wood", "field", "man", "well", "worth", "by", "son", "ford", "ridge", "er",
    "ing", "croft", "more", "wick",
];

pub const TOWN_HEADS: &[&str] = &[
    "Bright", "Clay", "Deer", "East", "Elm", "Fox", "Glen", "Green", "High", "Lake", "Maple",
    "Mill", "New", "Pine", "River", "Rock", "Silver", "Spring", "Stone", "West", "Willow",
];

pub const TOWN_TAILS: &[&str] = &[
    "ton", "ville", "field", "burg", "port", "dale", "haven", "brook", "wood", "view", "mont",
    "ford",
];

/// Eponymous clinical tests. Not PII, though several double as surnames.
pub const EPONYMS: &[&str] = &[
    "Spurling",
    "Phalen",
    "Tinel",
    "Hoffmann",
    "Babinski",
    "Waddell",
    "Finkelstein",
    "Lachman",
    "McMurray",
    "Hawkins",
    "Neer",
    "Patrick",
    "Romberg",
    "Adson",
    "Apley",
    "Thompson",
    "Yergason",
    "Speed",
    "Kernig",
    "Lhermitte",
    "Gaenslen",
    "Ober",
    "Trendelenburg",
    "Durkan",
    "Froment",
    "Jobe",
    "Cozen",
    "Mills",
];

pub const INSTRUMENTS: &[&str] = &[
    "Oswestry Disability Index",
    "Roland Morris Questionnaire",
    "Neck Disability Index",
    "Visual Analog Scale",
    "Beck Depression Inventory",
    "Pain Catastrophizing Scale",
    "Lower Extremity Functional Scale",
    "Quick DASH",
];

pub const MEDICATIONS: &[&str] = &[
    "gabapentin",
    "ibuprofen",
    "cyclobenzaprine",
    "tramadol",
    "meloxicam",
    "naproxen",
    "duloxetine",
    "acetaminophen",
];

pub const RELATIONS: &[&str] = &["husband", "wife", "son", "daughter", "brother", "sister"];
