import cmath

from rest_framework import serializers

from .closed_form import SeriesSpec

OUTPUT_FORMATS = ["text", "json", "csv"]
EVAL_METHODS = ["closed", "oracle", "catalog", "all"]

RECORD_FIELDS = [
    "check", "N", "p", "alternating", "x_re", "x_im",
    "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff", "tol", "pass",
]


def parse_complex(raw) -> complex:
    """``"1.5"`` is real, ``"1.0,-2.0"`` is 1 - 2i."""
    if isinstance(raw, (int, float, complex)) and not isinstance(raw, bool):
        return complex(raw)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        return complex(float(raw[0]), float(raw[1]))
    text = str(raw).strip()
    if "," in text:
        re_text, im_text = text.split(",", 1)
        return complex(float(re_text), float(im_text))
    return complex(float(text), 0.0)


class ComplexField(serializers.Field):
    """Accepts a bare number or an "re,im" pair."""

    default_error_messages = {
        "invalid": 'expected a number or an "re,im" pair, got {value!r}',
    }

    def to_internal_value(self, data):
        """
        Parse the raw option into a finite complex number.
        """
        try:
            value = parse_complex(data)
        except (TypeError, ValueError):
            self.fail("invalid", value=data)
        if not cmath.isfinite(value):
            self.fail("invalid", value=data)
        return value

    def to_representation(self, value):
        """
        Complex values go out as an [re, im] pair.
        """
        return [value.real, value.imag]


class FloatListField(serializers.ListField):
    """A list of floats given either as a list or as one comma-separated string."""

    child = serializers.FloatField()

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [item for item in data.split(",") if item.strip()]
        return super().to_internal_value(data)


class ComplexListField(serializers.ListField):
    """Complex points given as a list or as a ';'-separated string of "re,im" pairs."""

    child = ComplexField()

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [item for item in data.split(";") if item.strip()]
        return super().to_internal_value(data)


class SeriesOptionsSerializer(serializers.Serializer):
    """N, p and family flag shared by every subcommand that targets one series."""

    N = serializers.IntegerField(min_value=1)
    p = serializers.IntegerField(default=0)
    alternating = serializers.BooleanField(default=False)

    def validate(self, attrs):
        """
        Build the SeriesSpec once the three fields are individually valid.
        """
        attrs["spec"] = SeriesSpec(attrs["N"], attrs["p"], attrs["alternating"])
        return attrs


class TruncationOptionsSerializer(serializers.Serializer):
    """
    Oracle truncation overrides; unset values fall back to settings.
    """

    tail_tol = serializers.FloatField(required=False, allow_null=True, min_value=1e-300)
    max_half_width = serializers.IntegerField(required=False, allow_null=True, min_value=1)


class EvalOptionsSerializer(SeriesOptionsSerializer, TruncationOptionsSerializer):
    """
    Options of the eval subcommand: one series at one real or complex x.
    """

    x = ComplexField()
    method = serializers.ChoiceField(choices=EVAL_METHODS, default="closed")
    format = serializers.ChoiceField(choices=["text", "json"], default="text")
    output = serializers.CharField(required=False, allow_null=True)


class VerifyOptionsSerializer(TruncationOptionsSerializer):
    """
    Options of the verify subcommand. Grid and tolerance fields left unset
    keep the defaults from settings.BESSEL_SERIES.
    """

    N_max = serializers.IntegerField(required=False, allow_null=True, min_value=1)
    tol = serializers.FloatField(required=False, allow_null=True, min_value=0.0)
    real_tol = serializers.FloatField(required=False, allow_null=True, min_value=0.0)
    complex_tol = serializers.FloatField(required=False, allow_null=True, min_value=0.0)
    catalog_tol = serializers.FloatField(required=False, allow_null=True, min_value=0.0)
    structural_tol = serializers.FloatField(required=False, allow_null=True, min_value=0.0)
    points = FloatListField(required=False, allow_null=True, allow_empty=False)
    complex_points = ComplexListField(required=False, allow_null=True)
    output = serializers.CharField(required=False, allow_null=True)
    format = serializers.ChoiceField(choices=OUTPUT_FORMATS, default="text")

    def validate(self, attrs):
        """
        A zero tolerance can never pass, so it is rejected up front.
        """
        for name in ("tol", "real_tol", "complex_tol", "catalog_tol", "structural_tol"):
            if attrs.get(name) == 0:
                raise serializers.ValidationError({name: "tolerance must be > 0"})
        return attrs


class TableOptionsSerializer(TruncationOptionsSerializer):
    """
    Options of the table subcommand.
    """

    x = FloatListField(allow_empty=False)
    output = serializers.CharField(required=False, allow_null=True)
    format = serializers.ChoiceField(choices=OUTPUT_FORMATS, default="text")


class PlotDataOptionsSerializer(SeriesOptionsSerializer, TruncationOptionsSerializer):
    """
    Options of the plot-data subcommand: one series sampled over [x_min, x_max].
    """

    x_min = serializers.FloatField()
    x_max = serializers.FloatField()
    steps = serializers.IntegerField(min_value=1)
    output = serializers.CharField(required=False, allow_null=True)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs["x_min"] > attrs["x_max"]:
            raise serializers.ValidationError({"x_min": "must not exceed x_max"})
        return attrs


class EvalOutcomeSerializer(serializers.Serializer):
    """
    One evaluated value with its method, tail estimate and term count.
    """

    method = serializers.CharField()
    value_re = serializers.SerializerMethodField()
    value_im = serializers.SerializerMethodField()
    est_tail = serializers.FloatField()
    terms_used = serializers.IntegerField()

    def get_value_re(self, obj):
        """
        Real part of the value
        """
        return obj.value.real

    def get_value_im(self, obj):
        """
        Imaginary part of the value
        """
        return obj.value.imag


class CheckRecordSerializer(serializers.Serializer):
    """One check record with the stable report field names."""

    check = serializers.CharField()
    N = serializers.IntegerField(allow_null=True)
    p = serializers.IntegerField(allow_null=True)
    alternating = serializers.BooleanField(allow_null=True)
    x_re = serializers.FloatField()
    x_im = serializers.FloatField()
    lhs_re = serializers.FloatField(allow_null=True)
    lhs_im = serializers.FloatField(allow_null=True)
    rhs_re = serializers.FloatField(allow_null=True)
    rhs_im = serializers.FloatField(allow_null=True)
    abs_diff = serializers.FloatField(allow_null=True)
    tol = serializers.FloatField()
    passed = serializers.BooleanField()
    flagged = serializers.BooleanField()
    note = serializers.CharField(allow_blank=True)

    def to_representation(self, instance):
        """
        Emit the stable report fields first, then the flag and note.
        """
        data = super().to_representation(instance)
        # "pass" is a keyword, so it cannot be a declared field name.
        ordered = {name: data[name] for name in RECORD_FIELDS if name != "pass"}
        ordered["pass"] = data["passed"]
        ordered["flagged"] = data["flagged"]
        ordered["note"] = data["note"]
        return ordered


class VerificationReportSerializer(serializers.Serializer):
    """
    The whole report: summary, check classes, gated records and flagged rows.
    """

    summary = serializers.SerializerMethodField()
    checks = serializers.ListField(child=serializers.CharField())
    records = CheckRecordSerializer(many=True, source="gated_records")
    flagged = CheckRecordSerializer(many=True, source="flagged_records")

    def get_summary(self, obj):
        """
        Tallies computed from the records at serialization time
        """
        return obj.summary()


class TableCellSerializer(serializers.Serializer):
    """
    Values of one table row at one sample point.
    """

    x = serializers.FloatField()
    catalog = ComplexField()
    theorem = ComplexField()
    oracle = ComplexField()
    printed = ComplexField(allow_null=True)
    max_diff = serializers.FloatField()


class TableRowSerializer(serializers.Serializer):
    """
    One table row with its formula text and a cell per sample.
    """

    N = serializers.IntegerField(source="spec.N")
    p = serializers.IntegerField(source="spec.p")
    alternating = serializers.BooleanField(source="spec.alternating")
    formula = serializers.CharField(source="entry.display")
    reading = serializers.CharField(source="entry.reading")
    suspect = serializers.BooleanField(source="entry.suspect")
    note = serializers.CharField(source="entry.note")
    cells = TableCellSerializer(many=True)


class CorollaryTablesSerializer(serializers.Serializer):
    x_samples = serializers.ListField(child=serializers.FloatField())
    rows = TableRowSerializer(many=True)
