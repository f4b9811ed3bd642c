from django.apps import AppConfig


class LimsupConfig(AppConfig):
    name = 'limsup'
