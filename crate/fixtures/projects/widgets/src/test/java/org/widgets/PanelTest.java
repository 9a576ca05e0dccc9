package org.widgets;

import static org.junit.jupiter.api.Assertions.assertEquals;

import org.junit.jupiter.api.AfterEach;
import org.junit.jupiter.api.BeforeEach;
import org.junit.jupiter.api.Disabled;
import org.junit.jupiter.api.Test;

public class PanelTest {
    private Panel panel;
    private String label;

    @BeforeEach
    void init() {
        panel = new Panel();
    }

    @AfterEach
    void done() {
        panel.setTitle(null);
    }

    @Test
    void addComponent() {
        AbstractWComponent comp = new SimpleComponent();
        panel.add(comp, "main");
        assertEquals(1, panel.count());
    }

    @Test
    void resizeComputesArea() {
        int width = 3;
        long height = 2L;
        panel.resize(width, height);
        assertEquals(6L, panel.area());
    }

    @Test
    void withLambda() {
        Runnable r = () -> panel.count();
        r.run();
    }

    @Disabled
    @Test
    void disabledCase() {
        panel.count();
    }

    void helper() {
        panel.setTitle("helper");
    }
}
