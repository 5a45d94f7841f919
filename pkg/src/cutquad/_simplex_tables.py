"""Symmetric simplex rules (generated by tools/gen_simplex_rules.py).

Points are barycentric coordinates; weights sum to one (fraction of the
simplex volume). Each entry is ``(degree, points, weights)``.
"""

TRIANGLE = [
    (1, [
        (0.3333333333333333, 0.3333333333333333, 0.3333333333333333),
    ], [
        1.0,
    ]),
    (2, [
        (0.16666666666666669, 0.16666666666666669, 0.6666666666666666),
        (0.16666666666666669, 0.6666666666666666, 0.16666666666666669),
        (0.6666666666666666, 0.16666666666666669, 0.16666666666666669),
    ], [
        0.33333333333333337,
        0.33333333333333337,
        0.33333333333333337,
    ]),
    (4, [
        (0.10810301816807022, 0.4459484909159649, 0.4459484909159649),
        (0.4459484909159649, 0.10810301816807022, 0.4459484909159649),
        (0.4459484909159649, 0.4459484909159649, 0.10810301816807022),
        (0.09157621350977081, 0.09157621350977081, 0.8168475729804584),
        (0.09157621350977081, 0.8168475729804584, 0.09157621350977081),
        (0.8168475729804584, 0.09157621350977081, 0.09157621350977081),
    ], [
        0.22338158967801133,
        0.22338158967801133,
        0.22338158967801133,
        0.10995174365532197,
        0.10995174365532197,
        0.10995174365532197,
    ]),
    (5, [
        (0.3333333333333333, 0.3333333333333333, 0.3333333333333333),
        (0.10128650732345663, 0.10128650732345663, 0.7974269853530868),
        (0.10128650732345663, 0.7974269853530868, 0.10128650732345663),
        (0.7974269853530868, 0.10128650732345663, 0.10128650732345663),
        (0.059715871789768116, 0.47014206410511594, 0.47014206410511594),
        (0.47014206410511594, 0.059715871789768116, 0.47014206410511594),
        (0.47014206410511594, 0.47014206410511594, 0.059715871789768116),
    ], [
        0.22500000000000495,
        0.12593918054482767,
        0.12593918054482767,
        0.12593918054482767,
        0.132394152788504,
        0.132394152788504,
        0.132394152788504,
    ]),
    (6, [
        (0.24928674517094324, 0.24928674517094324, 0.5014265096581135),
        (0.24928674517094324, 0.5014265096581135, 0.24928674517094324),
        (0.5014265096581135, 0.24928674517094324, 0.24928674517094324),
        (0.06308901449149511, 0.06308901449149511, 0.8738219710170098),
        (0.06308901449149511, 0.8738219710170098, 0.06308901449149511),
        (0.8738219710170098, 0.06308901449149511, 0.06308901449149511),
        (0.05314504984484075, 0.31035245103375847, 0.6365024991214008),
        (0.05314504984484075, 0.6365024991214008, 0.31035245103375847),
        (0.31035245103375847, 0.05314504984484075, 0.6365024991214008),
        (0.31035245103375847, 0.6365024991214008, 0.05314504984484075),
        (0.6365024991214008, 0.05314504984484075, 0.31035245103375847),
        (0.6365024991214008, 0.31035245103375847, 0.05314504984484075),
    ], [
        0.11678627572632358,
        0.11678627572632358,
        0.11678627572632358,
        0.05084490637019679,
        0.05084490637019679,
        0.05084490637019679,
        0.08285107561840649,
        0.08285107561840649,
        0.08285107561840649,
        0.08285107561840649,
        0.08285107561840649,
        0.08285107561840649,
    ]),
]

TETRAHEDRON = [
    (1, [
        (0.25, 0.25, 0.25, 0.25),
    ], [
        1.0,
    ]),
    (2, [
        (0.13819660112501053, 0.13819660112501053, 0.13819660112501053, 0.5854101966249684),
        (0.13819660112501053, 0.13819660112501053, 0.5854101966249684, 0.13819660112501053),
        (0.13819660112501053, 0.5854101966249684, 0.13819660112501053, 0.13819660112501053),
        (0.5854101966249684, 0.13819660112501053, 0.13819660112501053, 0.13819660112501053),
    ], [
        0.25,
        0.25,
        0.25,
        0.25,
    ]),
    (3, [
        (0.017022263160570428, 0.3276592456131432, 0.3276592456131432, 0.3276592456131432),
        (0.3276592456131432, 0.017022263160570428, 0.3276592456131432, 0.3276592456131432),
        (0.3276592456131432, 0.3276592456131432, 0.017022263160570428, 0.3276592456131432),
        (0.3276592456131432, 0.3276592456131432, 0.3276592456131432, 0.017022263160570428),
        (0.10034654435676249, 0.10034654435676249, 0.10034654435676249, 0.6989603669297125),
        (0.10034654435676249, 0.10034654435676249, 0.6989603669297125, 0.10034654435676249),
        (0.10034654435676249, 0.6989603669297125, 0.10034654435676249, 0.10034654435676249),
        (0.6989603669297125, 0.10034654435676249, 0.10034654435676249, 0.10034654435676249),
    ], [
        0.15117685362296054,
        0.15117685362296054,
        0.15117685362296054,
        0.15117685362296054,
        0.09882314637703947,
        0.09882314637703947,
        0.09882314637703947,
        0.09882314637703947,
    ]),
    (5, [
        (0.09273525031089169, 0.09273525031089169, 0.09273525031089169, 0.7217942490673249),
        (0.09273525031089169, 0.09273525031089169, 0.7217942490673249, 0.09273525031089169),
        (0.09273525031089169, 0.7217942490673249, 0.09273525031089169, 0.09273525031089169),
        (0.7217942490673249, 0.09273525031089169, 0.09273525031089169, 0.09273525031089169),
        (0.0673422422100971, 0.31088591926330095, 0.31088591926330095, 0.31088591926330095),
        (0.31088591926330095, 0.0673422422100971, 0.31088591926330095, 0.31088591926330095),
        (0.31088591926330095, 0.31088591926330095, 0.0673422422100971, 0.31088591926330095),
        (0.31088591926330095, 0.31088591926330095, 0.31088591926330095, 0.0673422422100971),
        (0.04550370412564697, 0.04550370412564697, 0.45449629587435303, 0.45449629587435303),
        (0.04550370412564697, 0.45449629587435303, 0.04550370412564697, 0.45449629587435303),
        (0.04550370412564697, 0.45449629587435303, 0.45449629587435303, 0.04550370412564697),
        (0.45449629587435303, 0.04550370412564697, 0.04550370412564697, 0.45449629587435303),
        (0.45449629587435303, 0.04550370412564697, 0.45449629587435303, 0.04550370412564697),
        (0.45449629587435303, 0.45449629587435303, 0.04550370412564697, 0.04550370412564697),
    ], [
        0.07349304311636287,
        0.07349304311636287,
        0.07349304311636287,
        0.07349304311636287,
        0.11268792571801843,
        0.11268792571801843,
        0.11268792571801843,
        0.11268792571801843,
        0.042546020777079134,
        0.042546020777079134,
        0.042546020777079134,
        0.042546020777079134,
        0.042546020777079134,
        0.042546020777079134,
    ]),
    (6, [
        (0.032986329573189144, 0.32233789014227027, 0.32233789014227027, 0.32233789014227027),
        (0.32233789014227027, 0.032986329573189144, 0.32233789014227027, 0.32233789014227027),
        (0.32233789014227027, 0.32233789014227027, 0.032986329573189144, 0.32233789014227027),
        (0.32233789014227027, 0.32233789014227027, 0.32233789014227027, 0.032986329573189144),
        (0.04067395853460326, 0.04067395853460326, 0.04067395853460326, 0.8779781243961902),
        (0.04067395853460326, 0.04067395853460326, 0.8779781243961902, 0.04067395853460326),
        (0.04067395853460326, 0.8779781243961902, 0.04067395853460326, 0.04067395853460326),
        (0.8779781243961902, 0.04067395853460326, 0.04067395853460326, 0.04067395853460326),
        (0.2146028712592036, 0.2146028712592036, 0.2146028712592036, 0.3561913862223892),
        (0.2146028712592036, 0.2146028712592036, 0.3561913862223892, 0.2146028712592036),
        (0.2146028712592036, 0.3561913862223892, 0.2146028712592036, 0.2146028712592036),
        (0.3561913862223892, 0.2146028712592036, 0.2146028712592036, 0.2146028712592036),
        (0.0636610018750227, 0.0636610018750227, 0.2696723314583109, 0.6030056647916437),
        (0.0636610018750227, 0.0636610018750227, 0.6030056647916437, 0.2696723314583109),
        (0.0636610018750227, 0.2696723314583109, 0.0636610018750227, 0.6030056647916437),
        (0.0636610018750227, 0.2696723314583109, 0.6030056647916437, 0.0636610018750227),
        (0.0636610018750227, 0.6030056647916437, 0.0636610018750227, 0.2696723314583109),
        (0.0636610018750227, 0.6030056647916437, 0.2696723314583109, 0.0636610018750227),
        (0.2696723314583109, 0.0636610018750227, 0.0636610018750227, 0.6030056647916437),
        (0.2696723314583109, 0.0636610018750227, 0.6030056647916437, 0.0636610018750227),
        (0.2696723314583109, 0.6030056647916437, 0.0636610018750227, 0.0636610018750227),
        (0.6030056647916437, 0.0636610018750227, 0.0636610018750227, 0.2696723314583109),
        (0.6030056647916437, 0.0636610018750227, 0.2696723314583109, 0.0636610018750227),
        (0.6030056647916437, 0.2696723314583109, 0.0636610018750227, 0.0636610018750227),
    ], [
        0.05535718154366542,
        0.05535718154366542,
        0.05535718154366542,
        0.05535718154366542,
        0.01007721105531813,
        0.01007721105531813,
        0.01007721105531813,
        0.01007721105531813,
        0.03992275025813843,
        0.03992275025813843,
        0.03992275025813843,
        0.03992275025813843,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
        0.048214285714292676,
    ]),
    # signed weights: no positive rule with this orbit structure was found
    # some points lie on the simplex boundary
    (7, [
        (0.25, 0.25, 0.25, 0.25),
        (0.0782131923302979, 0.0782131923302979, 0.0782131923302979, 0.7653604230091062),
        (0.0782131923302979, 0.0782131923302979, 0.7653604230091062, 0.0782131923302979),
        (0.0782131923302979, 0.7653604230091062, 0.0782131923302979, 0.0782131923302979),
        (0.7653604230091062, 0.0782131923302979, 0.0782131923302979, 0.0782131923302979),
        (0.12184321666393648, 0.12184321666393648, 0.12184321666393648, 0.6344703500081905),
        (0.12184321666393648, 0.12184321666393648, 0.6344703500081905, 0.12184321666393648),
        (0.12184321666393648, 0.6344703500081905, 0.12184321666393648, 0.12184321666393648),
        (0.6344703500081905, 0.12184321666393648, 0.12184321666393648, 0.12184321666393648),
        (0.002382506660761119, 0.33253916444641296, 0.33253916444641296, 0.33253916444641296),
        (0.33253916444641296, 0.002382506660761119, 0.33253916444641296, 0.33253916444641296),
        (0.33253916444641296, 0.33253916444641296, 0.002382506660761119, 0.33253916444641296),
        (0.33253916444641296, 0.33253916444641296, 0.33253916444641296, 0.002382506660761119),
        (0.0, 0.0, 0.5, 0.5),
        (0.0, 0.5, 0.0, 0.5),
        (0.0, 0.5, 0.5, 0.0),
        (0.5, 0.0, 0.0, 0.5),
        (0.5, 0.0, 0.5, 0.0),
        (0.5, 0.5, 0.0, 0.0),
        (0.10000000000002691, 0.10000000000002691, 0.19999999999994977, 0.5999999999999964),
        (0.10000000000002691, 0.10000000000002691, 0.5999999999999964, 0.19999999999994977),
        (0.10000000000002691, 0.19999999999994977, 0.10000000000002691, 0.5999999999999964),
        (0.10000000000002691, 0.19999999999994977, 0.5999999999999964, 0.10000000000002691),
        (0.10000000000002691, 0.5999999999999964, 0.10000000000002691, 0.19999999999994977),
        (0.10000000000002691, 0.5999999999999964, 0.19999999999994977, 0.10000000000002691),
        (0.19999999999994977, 0.10000000000002691, 0.10000000000002691, 0.5999999999999964),
        (0.19999999999994977, 0.10000000000002691, 0.5999999999999964, 0.10000000000002691),
        (0.19999999999994977, 0.5999999999999964, 0.10000000000002691, 0.10000000000002691),
        (0.5999999999999964, 0.10000000000002691, 0.10000000000002691, 0.19999999999994977),
        (0.5999999999999964, 0.10000000000002691, 0.19999999999994977, 0.10000000000002691),
        (0.5999999999999964, 0.19999999999994977, 0.10000000000002691, 0.10000000000002691),
    ], [
        0.10958534079662978,
        0.06359964914638169,
        0.06359964914638169,
        0.06359964914638169,
        0.06359964914638169,
        -0.3751064406866115,
        -0.3751064406866115,
        -0.3751064406866115,
        -0.3751064406866115,
        0.029348551578443606,
        0.029348551578443606,
        0.029348551578443606,
        0.029348551578443606,
        0.005820105820108638,
        0.005820105820108638,
        0.005820105820108638,
        0.005820105820108638,
        0.005820105820108638,
        0.005820105820108638,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
        0.16534391534415524,
    ]),
]

