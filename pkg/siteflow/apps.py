from django.apps import AppConfig


class SiteflowConfig(AppConfig):
    name = 'siteflow'
    verbose_name = "Renewable energy site selection"
