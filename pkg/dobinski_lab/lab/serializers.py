from rest_framework import serializers

from numerics.conf import lab_setting


class RunConfigSerializer(serializers.Serializer):
    """Flags shared by every command."""
    precision = serializers.IntegerField(min_value=10, required=False)
    exponent_cap = serializers.IntegerField(min_value=2 ** 10, required=False)
    seed = serializers.IntegerField(min_value=0, default=0)
    out = serializers.CharField(allow_null=True, default=None)
    format = serializers.ChoiceField(choices=('json', 'csv'), default='json')
    timings = serializers.BooleanField(default=False)

    def validate(self, attrs):
        attrs.setdefault('precision', lab_setting('PRECISION'))
        attrs.setdefault('exponent_cap', lab_setting('EXPONENT_CAP'))
        return attrs


class ReportSerializer(serializers.Serializer):
    schema = serializers.CharField()
    command = serializers.CharField()
    config = serializers.DictField()
    results = serializers.JSONField()
    timings = serializers.DictField(child=serializers.FloatField())
