# Тестовый пакет
