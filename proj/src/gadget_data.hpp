#pragma once
//
// Raw JSON sources of the frozen gadget diagrams.  Each string is identical,
// byte for byte, to the matching file under fixtures/ (tests enforce this).
// Regenerate by pasting the fixture file contents between the delimiters.

#include <string>

namespace linkred {

inline const std::string& variable_gadget_source_raw() {
  static const std::string s = R"fx({
  "name": "variable_gadget",
  "version": 1,
  "diagram": {
    "version": 1,
    "crossings": [
      {
        "id": 0,
        "over_axis": 0,
        "label": "p[x]"
      },
      {
        "id": 1,
        "over_axis": 0,
        "label": "p[!x]"
      },
      {
        "id": 2,
        "over_axis": 1,
        "label": "q[x]"
      },
      {
        "id": 3,
        "over_axis": 0,
        "label": "q[!x]"
      },
      {
        "id": 4,
        "over_axis": 1,
        "label": "r"
      },
      {
        "id": 5,
        "over_axis": 0,
        "label": "s1"
      },
      {
        "id": 6,
        "over_axis": 0,
        "label": "s2"
      },
      {
        "id": 7,
        "over_axis": 0,
        "label": "s3"
      },
      {
        "id": 8,
        "over_axis": 0,
        "label": "s4"
      },
      {
        "id": 9,
        "over_axis": 0,
        "label": "s5"
      },
      {
        "id": 10,
        "over_axis": 0,
        "label": "s6"
      },
      {
        "id": 11,
        "over_axis": 1,
        "label": "s7"
      },
      {
        "id": 12,
        "over_axis": 1,
        "label": "s8"
      },
      {
        "id": 13,
        "over_axis": 1,
        "label": "s9"
      },
      {
        "id": 14,
        "over_axis": 0,
        "label": "s10"
      },
      {
        "id": 15,
        "over_axis": 1,
        "label": "s11"
      },
      {
        "id": 16,
        "over_axis": 0,
        "label": "s12"
      }
    ],
    "edges": [
      [
        0,
        1
      ],
      [
        2,
        21
      ],
      [
        3,
        25
      ],
      [
        4,
        5
      ],
      [
        6,
        28
      ],
      [
        7,
        22
      ],
      [
        8,
        54
      ],
      [
        9,
        59
      ],
      [
        10,
        40
      ],
      [
        11,
        49
      ],
      [
        12,
        46
      ],
      [
        13,
        63
      ],
      [
        14,
        55
      ],
      [
        15,
        48
      ],
      [
        16,
        19
      ],
      [
        17,
        58
      ],
      [
        18,
        60
      ],
      [
        20,
        26
      ],
      [
        23,
        31
      ],
      [
        24,
        41
      ],
      [
        27,
        35
      ],
      [
        29,
        45
      ],
      [
        30,
        32
      ],
      [
        33,
        38
      ],
      [
        34,
        37
      ],
      [
        36,
        42
      ],
      [
        39,
        44
      ],
      [
        43,
        50
      ],
      [
        47,
        51
      ],
      [
        52,
        62
      ],
      [
        53,
        56
      ],
      [
        57,
        65
      ],
      [
        61,
        66
      ],
      [
        64,
        67
      ]
    ],
    "outer_face": 0,
    "component_labels": []
  },
  "cut_edges": {
    "delta": [
      16,
      19
    ],
    "epsilon": [
      17,
      58
    ],
    "gamma1_neg": [
      7,
      22
    ],
    "gamma1_pos": [
      3,
      25
    ],
    "gamma2_neg": [
      28,
      6
    ],
    "gamma2_pos": [
      21,
      2
    ]
  },
  "outer_cut_order": [
    {
      "edge": "gamma2_pos",
      "dart": 2,
      "downstream": true
    },
    {
      "edge": "gamma1_neg",
      "dart": 22,
      "downstream": true
    },
    {
      "edge": "gamma2_neg",
      "dart": 6,
      "downstream": true
    },
    {
      "edge": "delta",
      "dart": 19,
      "downstream": true
    },
    {
      "edge": "epsilon",
      "dart": 17,
      "downstream": false
    },
    {
      "edge": "gamma1_pos",
      "dart": 25,
      "downstream": true
    }
  ]
}
)fx";
  return s;
}

inline const std::string& clause_gadget_source_raw() {
  static const std::string s = R"fx({
  "name": "clause_gadget",
  "version": 1,
  "diagram": {
    "version": 1,
    "crossings": [
      {
        "id": 0,
        "over_axis": 0,
        "label": "c12a:0"
      },
      {
        "id": 1,
        "over_axis": 0,
        "label": "c12a:1"
      },
      {
        "id": 2,
        "over_axis": 0,
        "label": "c12a:2"
      },
      {
        "id": 3,
        "over_axis": 0,
        "label": "c12a:3"
      },
      {
        "id": 4,
        "over_axis": 0,
        "label": "c12b:0"
      },
      {
        "id": 5,
        "over_axis": 0,
        "label": "c12b:1"
      },
      {
        "id": 6,
        "over_axis": 0,
        "label": "c12b:2"
      },
      {
        "id": 7,
        "over_axis": 0,
        "label": "c12b:3"
      },
      {
        "id": 8,
        "over_axis": 0,
        "label": "c23a:0"
      },
      {
        "id": 9,
        "over_axis": 0,
        "label": "c23a:1"
      },
      {
        "id": 10,
        "over_axis": 0,
        "label": "c23a:2"
      },
      {
        "id": 11,
        "over_axis": 0,
        "label": "c23a:3"
      },
      {
        "id": 12,
        "over_axis": 0,
        "label": "c23b:0"
      },
      {
        "id": 13,
        "over_axis": 0,
        "label": "c23b:1"
      },
      {
        "id": 14,
        "over_axis": 0,
        "label": "c23b:2"
      },
      {
        "id": 15,
        "over_axis": 0,
        "label": "c23b:3"
      },
      {
        "id": 16,
        "over_axis": 1,
        "label": "c31a:0"
      },
      {
        "id": 17,
        "over_axis": 1,
        "label": "c31a:1"
      },
      {
        "id": 18,
        "over_axis": 1,
        "label": "c31a:2"
      },
      {
        "id": 19,
        "over_axis": 1,
        "label": "c31a:3"
      },
      {
        "id": 20,
        "over_axis": 1,
        "label": "c31b:0"
      },
      {
        "id": 21,
        "over_axis": 1,
        "label": "c31b:1"
      },
      {
        "id": 22,
        "over_axis": 1,
        "label": "c31b:2"
      },
      {
        "id": 23,
        "over_axis": 1,
        "label": "c31b:3"
      }
    ],
    "edges": [
      [
        0,
        6
      ],
      [
        1,
        44
      ],
      [
        2,
        84
      ],
      [
        3,
        9
      ],
      [
        4,
        66
      ],
      [
        5,
        36
      ],
      [
        7,
        13
      ],
      [
        8,
        14
      ],
      [
        10,
        92
      ],
      [
        11,
        58
      ],
      [
        12,
        74
      ],
      [
        15,
        50
      ],
      [
        16,
        22
      ],
      [
        17,
        34
      ],
      [
        18,
        68
      ],
      [
        19,
        25
      ],
      [
        20,
        82
      ],
      [
        21,
        42
      ],
      [
        23,
        29
      ],
      [
        24,
        30
      ],
      [
        26,
        76
      ],
      [
        27,
        52
      ],
      [
        28,
        90
      ],
      [
        31,
        60
      ],
      [
        32,
        38
      ],
      [
        33,
        69
      ],
      [
        35,
        41
      ],
      [
        37,
        65
      ],
      [
        39,
        45
      ],
      [
        40,
        46
      ],
      [
        43,
        81
      ],
      [
        47,
        85
      ],
      [
        48,
        54
      ],
      [
        49,
        75
      ],
      [
        51,
        57
      ],
      [
        53,
        79
      ],
      [
        55,
        61
      ],
      [
        56,
        62
      ],
      [
        59,
        95
      ],
      [
        63,
        91
      ],
      [
        64,
        70
      ],
      [
        67,
        73
      ],
      [
        71,
        77
      ],
      [
        72,
        78
      ],
      [
        80,
        86
      ],
      [
        83,
        89
      ],
      [
        87,
        93
      ],
      [
        88,
        94
      ]
    ],
    "outer_face": 12,
    "component_labels": [
      "ring0:inner",
      "ring2:inner",
      "ring2:outer",
      "ring0:outer",
      "ring1:inner",
      "ring1:outer"
    ]
  },
  "rings": [
    {
      "outer_edge": [
        74,
        12
      ],
      "inner_edge": [
        66,
        4
      ]
    },
    {
      "outer_edge": [
        49,
        75
      ],
      "inner_edge": [
        53,
        79
      ]
    },
    {
      "outer_edge": [
        15,
        50
      ],
      "inner_edge": [
        11,
        58
      ]
    }
  ]
}
)fx";
  return s;
}

}  // namespace linkred
